//! Exact degrees of the actions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FormulaError;
use crate::families::{FamilySpec, PointClass};
use crate::gf::Sign;

fn pow(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

fn exact_ratio(num: BigInt, den: BigInt, what: &str) -> Result<BigUint, FormulaError> {
    if den.is_zero() || !num.is_multiple_of(&den) {
        return Err(FormulaError::NotIntegral(what.to_string()));
    }
    let v = num / den;
    if v.is_negative() {
        return Err(FormulaError::NotIntegral(what.to_string()));
    }
    Ok(v.to_biguint().expect("nonnegative"))
}

pub fn binomial(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(m - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `C(m, k)`: `k`-subsets of an `m`-set.
pub fn subsets(m: u64, k: u64) -> BigUint {
    binomial(m, k)
}

/// `(ab)! / (a!^b · b!)`: partitions into `b` blocks of size `a`.
pub fn partitions(a: u64, b: u64) -> BigUint {
    factorial(a * b) / (num_traits::pow(factorial(a), b as usize) * factorial(b))
}

/// `q^d`.
pub fn affine(d: u64, q: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), d as usize)
}

/// Gaussian binomial: `k`-subspaces of `GF(q)^d`.
pub fn grassmannian(d: u64, k: u64, q: u64) -> BigUint {
    if k > d {
        return BigUint::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= pow(q, d - i) - 1;
        den *= pow(q, i + 1) - 1;
    }
    exact_ratio(num, den, "gaussian binomial").expect("gaussian binomials are integers")
}

/// Totally isotropic `k`-subspaces of a symplectic `d`-space.
pub fn symplectic_isotropic(d: u64, k: u64, q: u64) -> Result<BigUint, FormulaError> {
    if d % 2 != 0 || k > d / 2 {
        return Err(FormulaError::InvalidParameters(format!("symplectic d={d}, k={k}")));
    }
    let m = d / 2;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= pow(q, 2 * (m - i)) - 1;
        den *= pow(q, i + 1) - 1;
    }
    exact_ratio(num, den, "symplectic isotropic subspaces")
}

/// Totally singular `k`-subspaces of a quadratic space of type `sign`.
pub fn orthogonal_singular(d: u64, k: u64, q: u64, sign: Sign) -> Result<BigUint, FormulaError> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    match sign {
        Sign::Circle => {
            if d % 2 == 0 || k > (d - 1) / 2 {
                return Err(FormulaError::InvalidParameters(format!("parabolic d={d}, k={k}")));
            }
            let m = (d - 1) / 2;
            for i in 0..k {
                num *= pow(q, 2 * (m - i)) - 1;
                den *= pow(q, i + 1) - 1;
            }
        }
        _ => {
            if d % 2 != 0 || k > d / 2 {
                return Err(FormulaError::InvalidParameters(format!("orthogonal d={d}, k={k}")));
            }
            let m = d / 2;
            let eps = BigInt::from(sign.epsilon());
            for i in 0..k {
                num *= (pow(q, m - i) - &eps) * (pow(q, m - i - 1) + &eps);
                den *= pow(q, i + 1) - 1;
            }
        }
    }
    exact_ratio(num, den, "orthogonal singular subspaces")
}

/// Nonsingular points of one class of a quadratic space.
pub fn orthogonal_nonsingular(d: u64, q: u64, sign: Sign, class: PointClass) -> Result<BigUint, FormulaError> {
    let bad = || FormulaError::InvalidParameters(format!("nonsingular points d={d}, q={q}, class={class}"));
    match (sign, class) {
        (Sign::Circle, PointClass::Perp(s)) if d % 2 == 1 && s != Sign::Circle => {
            let m = (d - 1) / 2;
            exact_ratio(pow(q, m) * (pow(q, m) + s.epsilon()), BigInt::from(2), "parabolic nonsingular points")
        }
        (Sign::Plus | Sign::Minus, _) if d % 2 == 0 => {
            let m = d / 2;
            let total = pow(q, m - 1) * (pow(q, m) - sign.epsilon());
            match class {
                PointClass::All if q % 2 == 0 => exact_ratio(total, BigInt::one(), "nonsingular points"),
                PointClass::Square | PointClass::NonSquare if q % 2 == 1 => {
                    exact_ratio(total, BigInt::from(2), "nonsingular points")
                }
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Totally isotropic `k`-subspaces of a hermitian `d`-space over `GF(q²)`.
pub fn unitary_isotropic(d: u64, k: u64, q: u64) -> Result<BigUint, FormulaError> {
    if 2 * k > d {
        return Err(FormulaError::InvalidParameters(format!("unitary d={d}, k={k}")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in (d - 2 * k + 1)..=d {
        num *= pow(q, i) - if i % 2 == 0 { 1 } else { -1 };
    }
    for i in 1..=k {
        den *= pow(q, 2 * i) - 1;
    }
    exact_ratio(num, den, "unitary isotropic subspaces")
}

/// Nonisotropic points of a hermitian `d`-space over `GF(q²)`.
pub fn unitary_nonisotropic(d: u64, q: u64) -> Result<BigUint, FormulaError> {
    let sign = if d % 2 == 0 { 1 } else { -1 };
    exact_ratio(pow(q, d - 1) * (pow(q, d) - sign), BigInt::from(q + 1), "unitary nonisotropic points")
}

/// Quadratic forms of type `sign` polarizing to a fixed symplectic form:
/// `q^m (q^m + ε) / 2` for `d = 2m`.
pub fn sp_on_go_cosets(d: u64, q: u64, sign: Sign) -> Result<BigUint, FormulaError> {
    if d % 2 != 0 || sign == Sign::Circle {
        return Err(FormulaError::InvalidParameters(format!("Sp on GO cosets d={d}")));
    }
    let m = d / 2;
    exact_ratio(pow(q, m) * (pow(q, m) + sign.epsilon()), BigInt::from(2), "Sp on GO cosets")
}

/// Pairs `{U, W}` with `V = U ⊕ W`, `dim U = k`.
pub fn pairs_complementary(d: u64, k: u64, q: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), (k * (d - k)) as usize) * grassmannian(d, k, q)
}

/// Flags `U ⊂ W` with `dim U = k`, `dim W = d − k`.
pub fn pairs_incident(d: u64, k: u64, q: u64) -> Result<BigUint, FormulaError> {
    if 2 * k > d {
        return Err(FormulaError::InvalidParameters(format!("incident pairs d={d}, k={k}")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in (d - 2 * k + 1)..=d {
        num *= pow(q, i) - 1;
    }
    for i in 1..=k {
        let f = pow(q, i) - 1;
        den *= &f * &f;
    }
    exact_ratio(num, den, "incident pairs")
}

/// Degree of the triality coset action of `PΩ_8^+(q)`.
pub fn triality(q: u64) -> Result<BigUint, FormulaError> {
    let c = if q % 2 == 1 { 2 } else { 1 };
    let num = pow(q + 1, 3) * pow(q * q + 1, 2) * (pow(q, 6) - 1);
    exact_ratio(num, (pow(q, 2) - 1) * c, "triality")
}

/// `(inner)^r`.
pub fn product_action(inner: &BigUint, r: u64) -> BigUint {
    num_traits::pow(inner.clone(), r as usize)
}

/// Degree predicted for a family.
pub fn degree(spec: &FamilySpec) -> Result<BigUint, FormulaError> {
    let u = |x: usize| x as u64;
    match spec {
        FamilySpec::SymSubsets { m, k } | FamilySpec::AltSubsets { m, k } => Ok(subsets(u(*m), u(*k))),
        FamilySpec::SymPartitions { a, b } => Ok(partitions(u(*a), u(*b))),
        FamilySpec::Affine { d, q } => Ok(affine(u(*d), *q as u64)),
        FamilySpec::LinearOnPk { d, q, k } => Ok(grassmannian(u(*d), u(*k), *q as u64)),
        FamilySpec::SpOnSk { d, q, k } => symplectic_isotropic(u(*d), u(*k), *q as u64),
        FamilySpec::SpOnGOCosets { d, sign } => sp_on_go_cosets(u(*d), 2, *sign),
        FamilySpec::GOOnS1 { d, q, sign } | FamilySpec::OmegaOnS1 { d, q, sign } => {
            orthogonal_singular(u(*d), 1, *q as u64, *sign)
        }
        FamilySpec::GOOnN1 { d, q, sign, class } | FamilySpec::OmegaOnN1 { d, q, sign, class } => {
            orthogonal_nonsingular(u(*d), *q as u64, *sign, *class)
        }
        FamilySpec::UnitaryOnS1 { d, q } => unitary_isotropic(u(*d), 1, *q as u64),
        FamilySpec::UnitaryOnN1 { d, q } => unitary_nonisotropic(u(*d), *q as u64),
        FamilySpec::WreathProduct { r, inner } => Ok(product_action(&degree(inner)?, u(*r))),
        FamilySpec::Mathieu24 => Ok(BigUint::from(24u32)),
    }
}

/// Degree as `usize`, if it fits.
pub fn degree_usize(spec: &FamilySpec) -> Result<usize, FormulaError> {
    let n = degree(spec)?;
    n.to_usize().ok_or(FormulaError::TooLarge(n.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn small_degrees() {
        assert_eq!(grassmannian(3, 1, 2), n(7));
        assert_eq!(partitions(2, 3), n(15));
        assert_eq!(partitions(4, 2), n(35));
        assert_eq!(partitions(2, 4), n(105));
        assert_eq!(subsets(6, 3), n(20));
    }

    #[test]
    fn unitary_maximal_isotropic() {
        assert_eq!(unitary_isotropic(6, 3, 2).unwrap(), n(891));
        assert_eq!(unitary_isotropic(6, 3, 3).unwrap(), n(27328));
        // (q+1)(q^3+1)(q^5+1)
        for q in 2..6u64 {
            assert_eq!(
                unitary_isotropic(6, 3, q).unwrap(),
                n((q + 1) * (q.pow(3) + 1) * (q.pow(5) + 1))
            );
        }
    }

    #[test]
    fn quadric_points() {
        assert_eq!(orthogonal_singular(6, 1, 2, Sign::Plus).unwrap(), n(35));
        assert_eq!(orthogonal_singular(6, 1, 2, Sign::Minus).unwrap(), n(27));
        assert_eq!(orthogonal_singular(8, 1, 2, Sign::Minus).unwrap(), n(119));
        assert_eq!(orthogonal_singular(7, 1, 3, Sign::Circle).unwrap(), n(364));
        assert_eq!(orthogonal_singular(4, 2, 2, Sign::Minus).unwrap(), n(0));
    }

    #[test]
    fn coset_and_other_degrees() {
        assert_eq!(sp_on_go_cosets(6, 2, Sign::Plus).unwrap(), n(36));
        assert_eq!(sp_on_go_cosets(6, 2, Sign::Minus).unwrap(), n(28));
        assert_eq!(sp_on_go_cosets(4, 2, Sign::Minus).unwrap(), n(6));
        assert_eq!(triality(2).unwrap(), n(14175));
        assert_eq!(unitary_nonisotropic(3, 2).unwrap(), n(12));
        // Maximal isotropic subspaces of Sp_d(q): ∏ (q^i + 1).
        assert_eq!(symplectic_isotropic(6, 3, 3).unwrap(), n(4 * 10 * 28));
    }

    #[test]
    fn pair_actions_are_products_of_gaussian_binomials() {
        for (d, k, q) in [(5u64, 2u64, 2u64), (6, 2, 3), (7, 3, 2)] {
            assert_eq!(pairs_incident(d, k, q).unwrap(), grassmannian(d, k, q) * grassmannian(d - k, k, q));
        }
        assert_eq!(pairs_complementary(2, 1, 2), n(2 * 3));
    }
}
