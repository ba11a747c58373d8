use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use super::base::{base_lower_bound, base_size_exact, base_size_greedy, BaseSearch, DEFAULT_BASE_BUDGET};
use super::mindeg::{
    minimal_degree_by_stabilizers, minimal_degree_exact, MinimalDegree, MuMethod, MuOptions, DEFAULT_STABILIZER_BUDGET,
};
use super::InvariantError;
use crate::families::{witness, ConstructedAction, FamilyError};
use crate::PermGroup;

#[derive(Clone, Debug)]
pub struct InvariantOptions {
    /// Node budget of the exact base search; `None` skips it.
    pub base_budget: Option<u64>,
    pub mu: MuOptions,
    /// Budget of the fixed-point search used past the order cap; `None` skips it.
    pub stabilizer_budget: Option<u64>,
}

impl Default for InvariantOptions {
    fn default() -> Self {
        Self {
            base_budget: Some(DEFAULT_BASE_BUDGET),
            mu: MuOptions::default(),
            stabilizer_budget: Some(DEFAULT_STABILIZER_BUDGET),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub order: BigUint,
    pub transitive: bool,
    pub b_exact: Option<usize>,
    /// Base of size `b_exact`, or the greedy base when the search gave up.
    pub base: Vec<usize>,
    pub b_greedy_upper: usize,
    pub b_lower: usize,
    pub mu_exact: Option<usize>,
    pub mu_method: Option<MuMethod>,
    pub mu_witness_upper: Option<usize>,
    pub witness_recipe: Option<String>,
    /// Closed-form support of the family witness.
    pub witness_expected: Option<u64>,
    #[serde(skip)]
    pub elapsed_base: Duration,
    #[serde(skip)]
    pub elapsed_mu: Duration,
}

fn as_decimal<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl InvariantReport {
    /// `n ≤ b·μ` with exact values, for transitive groups.
    pub fn product_bound_holds(&self) -> Option<bool> {
        if !self.transitive {
            return None;
        }
        Some(self.n <= self.b_exact? * self.mu_exact?)
    }

    /// Ordering constraints between the computed quantities; returns the violated ones.
    pub fn consistency_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(b) = self.b_exact {
            if !(self.b_lower <= b && b <= self.b_greedy_upper) {
                out.push(format!("b_lower {} ≤ b {} ≤ greedy {} fails", self.b_lower, b, self.b_greedy_upper));
            }
        }
        if let (Some(mu), Some(w)) = (self.mu_exact, self.mu_witness_upper) {
            if mu > w {
                out.push(format!("mu {mu} exceeds witness support {w}"));
            }
        }
        if self.product_bound_holds() == Some(false) {
            out.push(format!("n {} > b·mu", self.n));
        }
        out
    }
}

fn mu(group: &PermGroup, opts: &InvariantOptions) -> Result<MinimalDegree, InvariantError> {
    match minimal_degree_exact(group, &opts.mu) {
        Err(InvariantError::OrderCapExceeded { .. }) if opts.stabilizer_budget.is_some() => {
            minimal_degree_by_stabilizers(group, opts.stabilizer_budget.unwrap_or_default())
        }
        r => r,
    }
}

/// Base size and minimal degree of a group.
pub fn group_invariants(group: &PermGroup, opts: &InvariantOptions) -> InvariantReport {
    let start = Instant::now();
    let greedy = base_size_greedy(group);
    let search = opts.base_budget.map(|budget| base_size_exact(group, budget));
    let (b_exact, base) = match search {
        Some(BaseSearch::Exact { size, base }) => (Some(size), base),
        Some(BaseSearch::Bracket { .. }) | None => (None, greedy.clone()),
    };
    let elapsed_base = start.elapsed();
    let start = Instant::now();
    let m = if group.is_trivial() { None } else { mu(group, opts).ok() };
    let elapsed_mu = start.elapsed();
    InvariantReport {
        n: group.degree(),
        order: group.order(),
        transitive: group.is_transitive(),
        b_exact,
        base,
        b_greedy_upper: greedy.len(),
        b_lower: base_lower_bound(&group.order(), group.degree()),
        mu_exact: m.as_ref().map(|m| m.mu),
        mu_method: m.as_ref().map(|m| m.method.clone()),
        mu_witness_upper: m.as_ref().map(|m| m.mu),
        witness_recipe: None,
        witness_expected: None,
        elapsed_base,
        elapsed_mu,
    }
}

/// As [`group_invariants`], with the family's own witness as the μ upper bound.
pub fn action_invariants(action: &ConstructedAction, opts: &InvariantOptions) -> Result<InvariantReport, FamilyError> {
    let mut report = group_invariants(&action.group, opts);
    if let Some(w) = witness(action)? {
        report.mu_witness_upper = Some(w.support);
        report.witness_recipe = Some(w.recipe);
        report.witness_expected = w.expected;
    } else if report.mu_exact.is_none() {
        report.mu_witness_upper = None;
    }
    Ok(report)
}
