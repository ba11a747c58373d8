use rayon::prelude::*;
use serde::Serialize;

use super::chains::{check_inequality_chains, ChainReport};
use super::config::{Check, GridPoint, SweepConfig};
use super::record::{evaluate, Enabled, Verdict, VerificationRecord};
use super::VerifierError;
use crate::families::{build_with, FamilyError, FamilySpec};
use crate::invariants::action_invariants;

/// Environment variable overriding the number of worker threads.
pub const THREADS_VAR: &str = "PRIMBASE_THREADS";

/// Scope of the sweep, printed with the JSON and table reports.
pub const SCOPE_NOTE: &str = "Checks cover the constructible families in this grid only, \
not the full list of primitive groups of small degree.";

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub skipped: usize,
    pub unexpected_failures: usize,
    pub expected_failures: usize,
    pub inconclusive: usize,
    pub exempt: usize,
    /// Inequality-chain checks with at least one violation.
    pub chain_violations: Option<usize>,
}

impl Summary {
    fn of(records: &[VerificationRecord], chains: Option<&ChainReport>) -> Self {
        let mut s = Summary {
            chain_violations: chains.map(|c| c.violations()),
            ..Default::default()
        };
        for r in records {
            if r.skipped.is_some() {
                s.skipped += 1;
                continue;
            }
            s.checked += 1;
            s.unexpected_failures += r.unexpected_failure() as usize;
            s.expected_failures += r.expected_failure() as usize;
            s.inconclusive += [r.thm1, r.thm2].contains(&Verdict::Inconclusive) as usize;
            s.exempt += (r.thm2 == Verdict::Exempt) as usize;
        }
        s
    }

    /// `N checked, M unexpected failures`.
    pub fn line(&self) -> String {
        format!("{} checked, {} unexpected failures", self.checked, self.unexpected_failures)
    }

    pub fn detail_line(&self) -> String {
        let mut s = format!(
            "{} expected failures, {} skipped, {} inconclusive, {} exempt from the base-size bound",
            self.expected_failures, self.skipped, self.inconclusive, self.exempt
        );
        if let Some(v) = self.chain_violations {
            s.push_str(&format!(", {v} inequality-chain checks violated"));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub scope: &'static str,
    pub records: Vec<VerificationRecord>,
    pub chains: Option<ChainReport>,
    pub summary: Summary,
}

impl SweepResult {
    /// True if nothing failed unexpectedly.
    pub fn ok(&self) -> bool {
        self.summary.unexpected_failures == 0
    }
}

/// Worker count from [`THREADS_VAR`], if set.
pub fn threads_from_env() -> Result<Option<usize>, VerifierError> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(VerifierError::Threads(v)),
        },
        Err(_) => Ok(None),
    }
}

/// Builds every grid point, computes its invariants and verdicts. Records come
/// back in grid order whatever the worker count.
pub fn run_sweep(config: &SweepConfig, threads: Option<usize>) -> Result<SweepResult, VerifierError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| VerifierError::Pool(e.to_string()))?;
    let records: Vec<VerificationRecord> = pool.install(|| {
        config
            .points
            .par_iter()
            .enumerate()
            .map(|(i, p)| verify_point(config, i, p))
            .collect()
    });
    let chains = config.has(Check::InequalityChains).then(check_inequality_chains);
    let summary = Summary::of(&records, chains.as_ref());
    Ok(SweepResult {
        scope: SCOPE_NOTE,
        records,
        chains,
        summary,
    })
}

fn verify_point(config: &SweepConfig, index: usize, point: &GridPoint) -> VerificationRecord {
    let skip = |reason: String| VerificationRecord::skipped(index, point.line, point.spec.clone(), reason);
    let spec: FamilySpec = match point.spec.parse() {
        Ok(s) => s,
        Err(e) => return skip(e.to_string()),
    };
    if let Err(e) = spec.validate() {
        return skip(e.to_string());
    }
    if spec.is_known_imprimitive() {
        return skip("imprimitive action".into());
    }
    let enabled = Enabled {
        thm1: config.has(Check::Thm1),
        thm2: config.has(Check::Thm2),
        lower_bound: config.has(Check::LowerBound),
        formula: config.has(Check::FormulaCrosscheck),
    };
    let failed = |e: FamilyError| {
        let mut r = VerificationRecord::skipped(index, point.line, spec.to_string(), String::new());
        r.skipped = None;
        r.formula = Verdict::Fail;
        r.note = Some(e.to_string());
        r
    };
    let action = match build_with(&spec, &config.build_options()) {
        Ok(a) => a,
        Err(e @ (FamilyError::CapExceeded { .. } | FamilyError::OutsideEnvelope(_))) => return skip(e.to_string()),
        Err(e @ (FamilyError::Parse(_) | FamilyError::InvalidParameters(_) | FamilyError::Formula(_))) => {
            return skip(e.to_string())
        }
        Err(e) => return failed(e),
    };
    match action_invariants(&action, &config.invariant_options()) {
        Ok(report) => evaluate(index, point.line, &spec, &report, &enabled),
        Err(e) => failed(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep(text: &str) -> SweepResult {
        run_sweep(&SweepConfig::parse(text).unwrap(), Some(2)).unwrap()
    }

    #[test]
    fn affine_q2_passes() {
        let r = sweep("grid Affine d=1..4 q=2");
        assert_eq!(r.summary.line(), "4 checked, 0 unexpected failures");
        assert!(r.records.iter().all(|x| x.thm1 == Verdict::Pass && x.thm2 == Verdict::Exempt));
    }

    #[test]
    fn mathieu_is_the_expected_failure() {
        let r = sweep("grid Mathieu24");
        let m = &r.records[0];
        assert_eq!((m.b, m.mu, m.product), (Some(7), Some(16), Some(112)));
        assert_eq!(m.thm1, Verdict::Fail);
        assert!(m.expected_exception);
        assert_eq!((r.summary.unexpected_failures, r.summary.expected_failures), (0, 1));
    }

    #[test]
    fn partitions_thm2_margin() {
        let r = sweep("grid SymPartitions a=2 b=3");
        let x = &r.records[0];
        assert_eq!(x.b, Some(4));
        assert!((x.thm2_margin.unwrap() - (0.5 * 15f64.log2() + 2.0)).abs() < 1e-12);
        assert_eq!(x.thm2, Verdict::Pass);
    }

    #[test]
    fn invalid_points_are_skipped_with_reasons() {
        let r = sweep("grid SymSubsets m=4 k=2,3\ngrid Affine d=2 q=6");
        assert_eq!(r.summary.skipped, 3);
        assert!(r.records.iter().all(|x| x.skipped.as_deref().is_some_and(|s| !s.is_empty())));
    }
}
