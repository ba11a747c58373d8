//! Base size: exact search, greedy upper bound, counting lower bound.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::perm::orbits_of;
use crate::{PermGroup, StabilizerChain};

/// Default number of stabilizer computations an exact search may perform.
pub const DEFAULT_BASE_BUDGET: u64 = 100_000_000;

/// Outcome of an exact base-size search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BaseSearch {
    /// The minimum base size with one base of that size.
    Exact { size: usize, base: Vec<usize> },
    /// The budget ran out: `lower ≤ b(G) ≤ upper`, with a base of size `upper`.
    Bracket { lower: usize, upper: usize, base: Vec<usize> },
}

impl BaseSearch {
    pub fn exact(&self) -> Option<usize> {
        match self {
            BaseSearch::Exact { size, .. } => Some(*size),
            BaseSearch::Bracket { .. } => None,
        }
    }

    /// Best known base.
    pub fn base(&self) -> &[usize] {
        match self {
            BaseSearch::Exact { base, .. } | BaseSearch::Bracket { base, .. } => base,
        }
    }

    /// Upper end of the known range.
    pub fn upper(&self) -> usize {
        match self {
            BaseSearch::Exact { size, .. } => *size,
            BaseSearch::Bracket { upper, .. } => *upper,
        }
    }
}

/// Smallest `b` with `n^b ≥ |G|`.
pub fn base_lower_bound(order: &BigUint, n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let mut b = 0;
    let mut p = BigUint::from(1u32);
    while &p < order {
        p *= n;
        b += 1;
    }
    b
}

/// Orbits of the group with strong generators `gens` that have more than one
/// point, largest first, ties broken by least point.
fn moved_orbits(degree: usize, chain: &StabilizerChain) -> Vec<Vec<usize>> {
    let mut orbits: Vec<Vec<usize>> = orbits_of(degree, &chain.strong_generators())
        .into_iter()
        .filter(|o| o.len() > 1)
        .collect();
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    orbits
}

/// Greedy base: repeatedly fix the least point of a largest orbit.
pub fn base_size_greedy(group: &PermGroup) -> Vec<usize> {
    let mut chain = group.chain().clone();
    let mut base = Vec::new();
    while !chain.is_trivial() {
        let orbits = moved_orbits(group.degree(), &chain);
        let point = orbits[0][0];
        base.push(point);
        chain = chain.stabilizer(point);
    }
    base
}

fn fixed_points(degree: usize, chain: &StabilizerChain) -> Vec<usize> {
    let gens = chain.strong_generators();
    (0..degree).filter(|&x| gens.iter().all(|g| g.apply(x) == x)).collect()
}

struct Search {
    degree: usize,
    budget: u64,
    nodes: u64,
    /// Largest remaining depth known to fail, keyed by the fixed points of the node's group.
    failed: HashMap<Vec<usize>, usize>,
}

struct OutOfBudget;

impl Search {
    /// Extends `prefix` by at most `depth` points to a base, if possible.
    fn run(&mut self, chain: &StabilizerChain, depth: usize, prefix: &mut Vec<usize>) -> Result<bool, OutOfBudget> {
        if chain.is_trivial() {
            return Ok(true);
        }
        if depth == 0 {
            return Ok(false);
        }
        let orbits = moved_orbits(self.degree, chain);
        let largest = BigUint::from(orbits[0].len());
        if num_traits::pow(largest, depth) < chain.order() {
            return Ok(false);
        }
        let key = fixed_points(self.degree, chain);
        if self.failed.get(&key).is_some_and(|&d| d >= depth) {
            return Ok(false);
        }
        for orbit in &orbits {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OutOfBudget);
            }
            let point = orbit[0];
            prefix.push(point);
            if self.run(&chain.stabilizer(point), depth - 1, prefix)? {
                return Ok(true);
            }
            prefix.pop();
        }
        let entry = self.failed.entry(key).or_insert(0);
        *entry = (*entry).max(depth);
        Ok(false)
    }
}

/// Minimum base size by iterative deepening from the counting bound.
///
/// At each node the candidates are one point (the least) from each orbit of
/// the current pointwise stabilizer, larger orbits first; nodes whose group is
/// already known to need more points are skipped. Deterministic.
pub fn base_size_exact(group: &PermGroup, budget: u64) -> BaseSearch {
    let greedy = base_size_greedy(group);
    let mut lower = base_lower_bound(&group.order(), group.degree());
    let mut search = Search {
        degree: group.degree(),
        budget,
        nodes: 0,
        failed: HashMap::new(),
    };
    while lower < greedy.len() {
        let mut prefix = Vec::new();
        match search.run(group.chain(), lower, &mut prefix) {
            Ok(true) => return BaseSearch::Exact { size: prefix.len(), base: prefix },
            Ok(false) => lower += 1,
            Err(OutOfBudget) => {
                return BaseSearch::Bracket {
                    lower,
                    upper: greedy.len(),
                    base: greedy,
                }
            }
        }
    }
    BaseSearch::Exact {
        size: greedy.len(),
        base: greedy,
    }
}

/// True if the pointwise stabilizer of `points` is trivial.
pub fn is_base(group: &PermGroup, points: &[usize]) -> bool {
    group.pointwise_stabilizer(points).is_ok_and(|s| s.is_trivial())
}

/// True if `base` is a base and no proper subsequence obtained by dropping one
/// point is.
pub fn is_irredundant_base(group: &PermGroup, base: &[usize]) -> bool {
    is_base(group, base)
        && (0..base.len()).all(|i| {
            let mut rest = base.to_vec();
            rest.remove(i);
            !is_base(group, &rest)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build;
    use crate::Permutation;

    fn exact(s: &str) -> usize {
        let a = build(&s.parse().unwrap()).unwrap();
        base_size_exact(&a.group, DEFAULT_BASE_BUDGET).exact().unwrap()
    }

    #[test]
    fn symmetric_natural() {
        let g = PermGroup::symmetric(4);
        assert_eq!(base_size_exact(&g, 1000).exact(), Some(3));
        assert_eq!(base_size_greedy(&g).len(), 3);
    }

    #[test]
    fn partition_actions() {
        assert_eq!(exact("SymPartitions(a=2,b=3)"), 4);
        assert_eq!(exact("SymPartitions(a=4,b=2)"), 5);
    }

    #[test]
    fn affine_base_is_d_plus_one() {
        for d in 2..=4 {
            assert_eq!(exact(&format!("Affine(d={d},q=2)")), d + 1);
        }
        // AGL_1(2) is regular of degree 2.
        assert_eq!(exact("Affine(d=1,q=2)"), 1);
        assert_eq!(exact("Affine(d=2,q=3)"), 3);
    }

    #[test]
    fn trivial_and_regular() {
        assert_eq!(base_size_exact(&PermGroup::trivial(5), 10).exact(), Some(0));
        let c = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()]).unwrap();
        assert_eq!(base_size_exact(&c, 10).exact(), Some(1));
    }

    #[test]
    fn bracket_when_budget_is_exhausted() {
        let a = build(&"SymPartitions(a=2,b=3)".parse().unwrap()).unwrap();
        match base_size_exact(&a.group, 1) {
            BaseSearch::Bracket { lower, upper, base } => {
                assert!(lower <= 4 && upper >= 4);
                assert!(is_base(&a.group, &base));
            }
            other => panic!("expected a bracket, got {other:?}"),
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(base_lower_bound(&BigUint::from(244_823_040u32), 24), 7);
        assert_eq!(base_lower_bound(&BigUint::from(1u32), 24), 0);
    }
}
