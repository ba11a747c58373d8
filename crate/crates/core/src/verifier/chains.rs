//! Sign and monotonicity checks of the real functions behind the base-size proofs.
//!
//! Unbounded domains are sampled: `f(a)` for `a ≤ 1000`; the quadric for
//! `16 ≤ d ≤ 200`; the diagonal chain for `3 ≤ k ≤ 100`; the product-action
//! margin for `n ≤ 1000`; the large-base function on the grid
//! `m ∈ {20, 30, …, 110}`, `r ∈ {40, 50, …, 130}` and ten values of `k`
//! spread evenly over `1..=m/2`.

use serde::Serialize;

use crate::formulas::chains::{
    binomial_lower_bound_holds, chain_diagonal, chain_largebase, chain_largebase_differences, chain_quadric_min,
    f_partition, factorial_lower_bound_holds, product_action_margin,
};

/// Violations listed per check before truncating.
const MAX_LISTED: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct ChainCheck {
    pub name: &'static str,
    pub claim: &'static str,
    pub samples: usize,
    pub violations: usize,
    /// The first few failing parameter points.
    pub examples: Vec<String>,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub checks: Vec<ChainCheck>,
}

impl ChainReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| !c.holds()).count()
    }

    pub fn get(&self, name: &str) -> Option<&ChainCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Builder {
    check: ChainCheck,
}

impl Builder {
    fn new(name: &'static str, claim: &'static str) -> Self {
        Self {
            check: ChainCheck {
                name,
                claim,
                samples: 0,
                violations: 0,
                examples: Vec::new(),
            },
        }
    }

    fn sample(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.check.samples += 1;
        if !ok {
            self.check.violations += 1;
            if self.check.examples.len() < MAX_LISTED {
                self.check.examples.push(at());
            }
        }
    }
}

/// The `(m, r, k)` sample grid of the large-base function.
pub fn largebase_grid() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for m in (20..=110).step_by(10) {
        let top = m / 2;
        for r in (40..=130).step_by(10) {
            for i in 0..10u64 {
                let k = 1 + (i * (top - 1) + 4) / 9;
                out.push((m, r, k));
            }
        }
    }
    out
}

pub fn check_inequality_chains() -> ChainReport {
    let mut checks = Vec::new();
    let ok = |r: Result<f64, _>| r.expect("parameters inside the domain");

    let mut b = Builder::new("partition_sign_change", "f(10) > 0 and f(9) <= 0");
    b.sample(ok(f_partition(10)) > 0.0, || "a=10".into());
    b.sample(ok(f_partition(9)) <= 0.0, || "a=9".into());
    checks.push(b.check);

    let mut b = Builder::new("partition_positive", "f(a) > 0 for 10 <= a <= 1000");
    for a in 10..=1000 {
        b.sample(ok(f_partition(a)) > 0.0, || format!("a={a}"));
    }
    checks.push(b.check);

    let mut b = Builder::new("quadric_minimum_at_3", "min over 3 <= k < d/2 of -3k^2+2kd-2k is at k=3, 16 <= d <= 200");
    for d in 16..=200 {
        let (k, v) = chain_quadric_min(d).expect("d >= 16");
        b.sample(k == 3, || format!("d={d}: minimum {v} at k={k}, value at k=3 is {}", 6 * d - 33));
    }
    checks.push(b.check);

    let mut b = Builder::new("quadric_bound", "d/3 + 8 <= min_k(-3k^2+2kd-2k)/2 + 6, 16 <= d <= 200");
    for d in 16..=200 {
        let (_, v) = chain_quadric_min(d).expect("d >= 16");
        b.sample(d as f64 / 3.0 + 8.0 <= v / 2.0 + 6.0, || format!("d={d}"));
    }
    checks.push(b.check);

    let mut b = Builder::new("diagonal_negative_decreasing", "g(k) < 0 and g(k+1) < g(k), 3 <= k <= 100");
    for k in 3..=100 {
        let (v, next) = (ok(chain_diagonal(k)), ok(chain_diagonal(k + 1)));
        b.sample(v < 0.0 && next < v, || format!("k={k}"));
    }
    checks.push(b.check);

    let mut b = Builder::new("product_action_k2", "k-5 <= (k-2) log n at k=2, 2 <= n <= 1000");
    for n in 2..=1000 {
        b.sample(ok(product_action_margin(2, n)) >= 0.0, || format!("n={n}"));
    }
    checks.push(b.check);

    let mut b = Builder::new("product_action", "k-5 <= (k-2) log n, 3 <= k <= 50, 5 <= n <= 1000");
    for k in 3..=50 {
        for n in 5..=1000 {
            b.sample(ok(product_action_margin(k, n)) >= 0.0, || format!("k={k}, n={n}"));
        }
    }
    checks.push(b.check);

    let mut b = Builder::new("largebase_corner", "f(20,40,1) >= 0");
    b.sample(ok(chain_largebase(20, 40, 1)) >= 0.0, || "(20,40,1)".into());
    checks.push(b.check);

    let grid = largebase_grid();
    let mut b = Builder::new("largebase_nonnegative", "f(m,r,k) >= 0 on the sample grid");
    for &(m, r, k) in &grid {
        b.sample(ok(chain_largebase(m, r, k)) >= 0.0, || format!("({m},{r},{k})"));
    }
    checks.push(b.check);

    let names = [
        ("largebase_increasing_m", "f(m+1,r,k) >= f(m,r,k) on the sample grid"),
        ("largebase_increasing_r", "f(m,r+1,k) >= f(m,r,k) on the sample grid"),
        ("largebase_increasing_k", "f(m,r,k+1) >= f(m,r,k) on the sample grid, k+1 <= m/2"),
    ];
    for (axis, (name, claim)) in names.into_iter().enumerate() {
        let mut b = Builder::new(name, claim);
        for &(m, r, k) in &grid {
            let diffs = chain_largebase_differences(m, r, k).expect("inside the domain");
            if let Some(d) = diffs[axis] {
                b.sample(d >= 0.0, || format!("({m},{r},{k}): difference {d:.4}"));
            }
        }
        checks.push(b.check);
    }

    let mut b = Builder::new("factorial_estimate", "x! >= (x/3)^x, 1 <= x <= 300");
    for x in 1..=300 {
        b.sample(factorial_lower_bound_holds(x), || format!("x={x}"));
    }
    checks.push(b.check);

    let mut b = Builder::new("binomial_estimate", "C(m,k) >= (m/k)^k, 1 <= k <= m/2, m <= 120");
    for m in 2..=120 {
        for k in 1..=m / 2 {
            b.sample(binomial_lower_bound_holds(m, k), || format!("m={m}, k={k}"));
        }
    }
    checks.push(b.check);

    ChainReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = largebase_grid();
        assert_eq!(g.len(), 1000);
        assert!(g.iter().all(|&(m, _, k)| 1 <= k && 2 * k <= m));
        assert_eq!(g.iter().filter(|p| p.0 == 20 && p.1 == 40).map(|p| p.2).collect::<Vec<_>>(), (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn suite_outcomes() {
        let r = check_inequality_chains();
        for name in [
            "partition_sign_change",
            "quadric_bound",
            "diagonal_negative_decreasing",
            "product_action_k2",
            "product_action",
            "largebase_corner",
            "largebase_nonnegative",
            "largebase_increasing_m",
            "largebase_increasing_r",
            "factorial_estimate",
            "binomial_estimate",
        ] {
            assert!(r.get(name).unwrap().holds(), "{name}: {:?}", r.get(name));
        }
        let q = r.get("quadric_minimum_at_3").unwrap();
        assert_eq!((q.violations, q.examples[0].starts_with("d=17")), (1, true));
    }
}
