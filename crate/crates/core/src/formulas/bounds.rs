//! Base-size bounds. All logarithms are base 2.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::FormulaError;

/// `log2` of a big integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits") as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("fits") as f64;
    top.log2() + shift as f64
}

/// Names of the implemented bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundName {
    /// `½ log n + 6`.
    Thm2,
    /// `2 + log n`.
    Mrd,
    /// `9 log n`.
    Liebeck,
    /// `7`.
    Nonstandard7,
    /// `d/k + c` for a subspace action.
    DkPlusC,
    /// `⌈⌈log k⌉ / ⌊log n⌋⌉ + b(H)` for a product action.
    Bow10Wreath,
    /// `2 log|G| / log n + 22`.
    LargebaseHlm,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundName::Thm2 => "thm2",
            BoundName::Mrd => "mrd",
            BoundName::Liebeck => "liebeck",
            BoundName::Nonstandard7 => "nonstandard7",
            BoundName::DkPlusC => "dk_plus_c",
            BoundName::Bow10Wreath => "bow10_wreath",
            BoundName::LargebaseHlm => "largebase_hlm",
        })
    }
}

/// Subspace action types for the `d/k + c` bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubspaceType {
    /// Totally singular subspaces: `c = 10`.
    TotallySingular,
    /// Nondegenerate subspaces: `c = 11`.
    Nondegenerate,
    /// Arbitrary subspaces: `c = 5`.
    Any,
}

fn check_n(n: f64) -> Result<(), FormulaError> {
    if n.is_finite() && n >= 2.0 {
        Ok(())
    } else {
        Err(FormulaError::InvalidParameters(format!("degree {n} must be at least 2")))
    }
}

pub fn thm2(n: f64) -> Result<f64, FormulaError> {
    check_n(n)?;
    Ok(n.log2() / 2.0 + 6.0)
}

pub fn mrd(n: f64) -> Result<f64, FormulaError> {
    check_n(n)?;
    Ok(2.0 + n.log2())
}

pub fn liebeck(n: f64) -> Result<f64, FormulaError> {
    check_n(n)?;
    Ok(9.0 * n.log2())
}

pub fn nonstandard7() -> f64 {
    7.0
}

pub fn dk_plus_c(d: u64, k: u64, kind: SubspaceType) -> Result<f64, FormulaError> {
    if k == 0 || k > d {
        return Err(FormulaError::InvalidParameters(format!("d={d}, k={k}")));
    }
    let c = match kind {
        SubspaceType::TotallySingular => 10.0,
        SubspaceType::Nondegenerate => 11.0,
        SubspaceType::Any => 5.0,
    };
    Ok(d as f64 / k as f64 + c)
}

/// Smallest `t` with `base^t ≥ x`.
pub fn ceil_log(base: u64, x: u64) -> u64 {
    assert!(base >= 2);
    let mut t = 0;
    let mut p: u128 = 1;
    while p < x as u128 {
        p *= base as u128;
        t += 1;
    }
    t
}

/// Largest `t` with `base^t ≤ x` (`x ≥ 1`).
pub fn floor_log(base: u64, x: u64) -> u64 {
    assert!(base >= 2 && x >= 1);
    let mut t = 0;
    let mut p: u128 = base as u128;
    while p <= x as u128 {
        p *= base as u128;
        t += 1;
    }
    t
}

/// `⌈⌈log k⌉ / ⌊log n⌋⌉ + b_inner` for `H ≀ S_k` on `Γ^k`, `n = |Γ|`.
pub fn bow10_wreath(k: u64, n: u64, b_inner: u64) -> Result<u64, FormulaError> {
    if k < 1 || n < 2 {
        return Err(FormulaError::InvalidParameters(format!("k={k}, n={n}")));
    }
    let num = ceil_log(2, k);
    let den = floor_log(2, n);
    Ok(num.div_ceil(den) + b_inner)
}

/// `2 log|G| / log n + 22`.
pub fn largebase_hlm(order: &BigUint, n: f64) -> Result<f64, FormulaError> {
    check_n(n)?;
    Ok(2.0 * log2_big(order) / n.log2() + 22.0)
}

/// The two possible values `⌈log k / log|G_0|⌉ + {1, 2}` for diagonal-type groups.
pub fn diagonal_bracket(k: u64, g0_order: &BigUint) -> Result<(u64, u64), FormulaError> {
    if k < 2 || g0_order.bits() < 2 {
        return Err(FormulaError::InvalidParameters(format!("k={k}, |G0|={g0_order}")));
    }
    // ⌈log k / log|G0|⌉ is the smallest t with |G0|^t ≥ k.
    let mut t = 0u64;
    let mut p = BigUint::from(1u32);
    while p < BigUint::from(k) {
        p *= g0_order;
        t += 1;
    }
    Ok((t + 1, t + 2))
}

/// `n log n`.
pub fn n_log_n(n: f64) -> f64 {
    n * n.log2()
}
