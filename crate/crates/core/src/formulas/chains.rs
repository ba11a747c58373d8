//! Real-valued functions that base-size proofs reduce to, with predicates for
//! the elementary estimates they use. All logarithms are base 2.

use num_bigint::BigUint;
use num_rational::Ratio;

use super::bounds::ceil_log;
use super::degree::{binomial, factorial};
use super::FormulaError;

/// `½(4a log(4/3) − log 10!) + 6 − ⌈log₄(a+2)⌉ − 1`.
pub fn f_partition(a: u64) -> Result<f64, FormulaError> {
    if a < 2 {
        return Err(FormulaError::InvalidParameters(format!("a = {a} < 2")));
    }
    let log_10_fact = (3_628_800f64).log2();
    Ok(0.5 * (4.0 * a as f64 * (4.0f64 / 3.0).log2() - log_10_fact) + 6.0
        - ceil_log(4, a + 2) as f64
        - 1.0)
}

/// `−3k² + 2kd − 2k`.
pub fn chain_quadric(d: i64, k: i64) -> f64 {
    (-3 * k * k + 2 * k * d - 2 * k) as f64
}

/// Minimum of [`chain_quadric`] over `3 ≤ k < d/2`, with the smallest
/// minimizing `k`.
pub fn chain_quadric_min(d: i64) -> Result<(i64, f64), FormulaError> {
    let mut best: Option<(i64, f64)> = None;
    let mut k = 3;
    while 2 * k < d {
        let v = chain_quadric(d, k);
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((k, v));
        }
        k += 1;
    }
    best.ok_or_else(|| FormulaError::InvalidParameters(format!("no k with 3 <= k < {d}/2")))
}

/// `2 log k − (k−1)(log 60)² − 6 log 60`.
pub fn chain_diagonal(k: u64) -> Result<f64, FormulaError> {
    if k < 3 {
        return Err(FormulaError::InvalidParameters(format!("k = {k} < 3")));
    }
    let l60 = 60f64.log2();
    Ok(2.0 * (k as f64).log2() - (k as f64 - 1.0) * l60 * l60 - 6.0 * l60)
}

/// `(k−2) log n − (k−5)`: nonnegative when `k − 5 ≤ (k−2) log n`.
pub fn product_action_margin(k: u64, n: u64) -> Result<f64, FormulaError> {
    if k < 2 || n < 2 {
        return Err(FormulaError::InvalidParameters(format!("k={k}, n={n}")));
    }
    Ok((k as f64 - 2.0) * (n as f64).log2() - (k as f64 - 5.0))
}

fn check_largebase(m: u64, r: u64, k: u64) -> Result<(), FormulaError> {
    if m < 20 || r < 40 || k < 1 || 2 * k > m {
        return Err(FormulaError::InvalidParameters(format!(
            "need m >= 20, r >= 40, 1 <= k <= m/2; got ({m}, {r}, {k})"
        )));
    }
    Ok(())
}

/// `(rk/72) log²(m/k) − log m − (log r)/m` on `m ≥ 20, r ≥ 40, 1 ≤ k ≤ m/2`.
pub fn chain_largebase(m: u64, r: u64, k: u64) -> Result<f64, FormulaError> {
    check_largebase(m, r, k)?;
    let l = (m as f64 / k as f64).log2();
    Ok(r as f64 * k as f64 / 72.0 * l * l - (m as f64).log2() - (r as f64).log2() / m as f64)
}

/// Forward differences of [`chain_largebase`] in `m`, `r` and `k`. The `k`
/// difference is `None` when `k + 1` leaves the domain.
pub fn chain_largebase_differences(m: u64, r: u64, k: u64) -> Result<[Option<f64>; 3], FormulaError> {
    let f = chain_largebase(m, r, k)?;
    let dm = chain_largebase(m + 1, r, k)? - f;
    let dr = chain_largebase(m, r + 1, k)? - f;
    let dk = chain_largebase(m, r, k + 1).ok().map(|v| v - f);
    Ok([Some(dm), Some(dr), dk])
}

/// `3k(m−k) / (m(m−1)) · C(m,k)^r` as an exact rational.
pub fn largebase_mu_bound(m: u64, k: u64, r: u64) -> Result<Ratio<BigUint>, FormulaError> {
    if m < 2 || k < 1 || 2 * k > m || r < 1 {
        return Err(FormulaError::InvalidParameters(format!("m={m}, k={k}, r={r}")));
    }
    let n = num_traits::pow(binomial(m, k), r as usize);
    Ok(Ratio::new(BigUint::from(3 * k * (m - k)) * n, BigUint::from(m * (m - 1))))
}

/// `x! ≥ (x/3)^x`, checked exactly as `x!·3^x ≥ x^x`.
pub fn factorial_lower_bound_holds(x: u64) -> bool {
    factorial(x) * num_traits::pow(BigUint::from(3u32), x as usize)
        >= num_traits::pow(BigUint::from(x), x as usize)
}

/// `C(m,k) ≥ (m/k)^k`, checked exactly as `C(m,k)·k^k ≥ m^k`.
pub fn binomial_lower_bound_holds(m: u64, k: u64) -> bool {
    k >= 1
        && k <= m
        && binomial(m, k) * num_traits::pow(BigUint::from(k), k as usize)
            >= num_traits::pow(BigUint::from(m), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_chain_changes_sign_between_nine_and_ten() {
        assert!(f_partition(10).unwrap() > 0.0);
        assert!(f_partition(9).unwrap() <= 0.0);
        assert!(f_partition(11).unwrap() > f_partition(10).unwrap());
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(chain_quadric(16, 3), 63.0);
        assert_eq!(chain_quadric(7, 3), 9.0);
        assert_eq!(chain_quadric_min(16).unwrap(), (3, 63.0));
        assert!(chain_quadric_min(6).is_err());
        // The minimum sits at k = 3 for every d >= 16 except d = 17, where the
        // other end of the range wins.
        for d in (16..200).filter(|&d| d != 17) {
            assert_eq!(chain_quadric_min(d).unwrap().1, (6 * d - 33) as f64);
        }
        assert_eq!(chain_quadric_min(17).unwrap(), (8, 64.0));
    }

    #[test]
    fn diagonal_chain_negative_and_decreasing() {
        let mut prev = chain_diagonal(3).unwrap();
        assert!(prev < 0.0);
        for k in 4..=100 {
            let v = chain_diagonal(k).unwrap();
            assert!(v < 0.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn largebase_examples() {
        assert!(chain_largebase(20, 40, 1).unwrap() >= 0.0);
        assert!(chain_largebase(19, 40, 1).is_err());
        let mu = largebase_mu_bound(7, 3, 1).unwrap();
        assert_eq!(mu, Ratio::from_integer(BigUint::from(30u32)));
        for m in 3..30 {
            assert_eq!(largebase_mu_bound(m, 1, 1).unwrap(), Ratio::from_integer(BigUint::from(3u32)));
        }
    }

    #[test]
    fn elementary_estimates() {
        assert!((1..200).all(factorial_lower_bound_holds));
        assert!((1..60).all(|m| (1..=m).all(|k| binomial_lower_bound_holds(m, k))));
    }
}
