//! Orders of the classical groups and of the other constructed groups.

use num_bigint::BigUint;
use num_integer::Integer;

use super::FormulaError;
use crate::families::FamilySpec;
use crate::gf::Sign;

fn pow(q: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

fn factorial(n: u64) -> BigUint {
    super::degree::factorial(n)
}

/// `|GL_d(q)| = q^{d(d−1)/2} ∏_{i=1}^d (q^i − 1)`.
pub fn gl(d: u64, q: u64) -> BigUint {
    (1..=d).fold(pow(q, d * (d - 1) / 2), |acc, i| acc * (pow(q, i) - 1u32))
}

pub fn sl(d: u64, q: u64) -> BigUint {
    gl(d, q) / BigUint::from(q - 1)
}

/// `|Sp_{2m}(q)| = q^{m²} ∏_{i=1}^m (q^{2i} − 1)`.
pub fn sp(d: u64, q: u64) -> Result<BigUint, FormulaError> {
    if d % 2 != 0 {
        return Err(FormulaError::InvalidParameters(format!("Sp needs even d, got {d}")));
    }
    let m = d / 2;
    Ok((1..=m).fold(pow(q, m * m), |acc, i| acc * (pow(q, 2 * i) - 1u32)))
}

/// Full isometry group of a nondegenerate quadratic form.
pub fn go(d: u64, q: u64, sign: Sign) -> Result<BigUint, FormulaError> {
    match sign {
        Sign::Circle => {
            if d % 2 == 0 || q % 2 == 0 {
                return Err(FormulaError::InvalidParameters(format!("GO_{d}({q}) of type o")));
            }
            let m = (d - 1) / 2;
            Ok((1..=m).fold(pow(q, m * m) * 2u32, |acc, i| acc * (pow(q, 2 * i) - 1u32)))
        }
        _ => {
            if d % 2 != 0 || d == 0 {
                return Err(FormulaError::InvalidParameters(format!("GO_{d}({q}) of type {sign}")));
            }
            let m = d / 2;
            let top = if sign == Sign::Plus { pow(q, m) - 1u32 } else { pow(q, m) + 1u32 };
            Ok((1..m).fold(pow(q, m * (m - 1)) * 2u32 * top, |acc, i| acc * (pow(q, 2 * i) - 1u32)))
        }
    }
}

/// `|Ω|`: index 2 in `GO` for even `q`, index 4 for odd `q`.
pub fn omega(d: u64, q: u64, sign: Sign) -> Result<BigUint, FormulaError> {
    let g = go(d, q, sign)?;
    Ok(g / BigUint::from(if q % 2 == 0 { 2u32 } else { 4 }))
}

/// `|GU_d(q)| = q^{d(d−1)/2} ∏_{i=1}^d (q^i − (−1)^i)`, matrices over `GF(q²)`.
pub fn gu(d: u64, q: u64) -> BigUint {
    (1..=d).fold(pow(q, d * (d - 1) / 2), |acc, i| {
        if i % 2 == 0 {
            acc * (pow(q, i) - 1u32)
        } else {
            acc * (pow(q, i) + 1u32)
        }
    })
}

pub fn su(d: u64, q: u64) -> BigUint {
    gu(d, q) / BigUint::from(q + 1)
}

pub fn agl(d: u64, q: u64) -> BigUint {
    pow(q, d) * gl(d, q)
}

pub const MATHIEU24_ORDER: u64 = 244_823_040;

/// Number of scalar matrices in the matrix group behind a classical family.
pub fn scalars(spec: &FamilySpec) -> Option<u64> {
    let g = |a: u64, b: u64| a.gcd(&b);
    match *spec {
        FamilySpec::LinearOnPk { d, q, .. } => Some(g(d as u64, q as u64 - 1)),
        FamilySpec::SpOnSk { q, .. } => Some(g(2, q as u64 - 1)),
        FamilySpec::GOOnS1 { q, .. } | FamilySpec::GOOnN1 { q, .. } => Some(g(2, q as u64 - 1)),
        FamilySpec::OmegaOnS1 { d, q, sign } | FamilySpec::OmegaOnN1 { d, q, sign, .. } => {
            if q % 2 == 0 || d % 2 == 1 {
                Some(1)
            } else {
                // −1 lies in Ω^ε_{2m}(q) exactly when q^m ≡ ε (mod 4).
                let m = d as u32 / 2;
                let r = (q as i64).pow(m).rem_euclid(4);
                Some(if r == sign.epsilon().rem_euclid(4) { 2 } else { 1 })
            }
        }
        FamilySpec::UnitaryOnS1 { d, q } | FamilySpec::UnitaryOnN1 { d, q } => Some(g(d as u64, q as u64 + 1)),
        _ => None,
    }
}

/// Order of the permutation group a family builds.
pub fn group_order(spec: &FamilySpec) -> Result<BigUint, FormulaError> {
    let u = |x: usize| x as u64;
    let projective = |full: BigUint| -> BigUint { full / BigUint::from(scalars(spec).unwrap_or(1)) };
    Ok(match spec {
        FamilySpec::SymSubsets { m, .. } => factorial(u(*m)),
        FamilySpec::SymPartitions { a, b } => factorial(u(a * b)),
        FamilySpec::AltSubsets { m, .. } => factorial(u(*m)) / 2u32,
        FamilySpec::Affine { d, q } => agl(u(*d), *q as u64),
        FamilySpec::LinearOnPk { d, q, .. } => projective(sl(u(*d), *q as u64)),
        FamilySpec::SpOnSk { d, q, .. } => projective(sp(u(*d), *q as u64)?),
        FamilySpec::SpOnGOCosets { d, .. } => sp(u(*d), 2)?,
        FamilySpec::GOOnS1 { d, q, sign } | FamilySpec::GOOnN1 { d, q, sign, .. } => {
            projective(go(u(*d), *q as u64, *sign)?)
        }
        FamilySpec::OmegaOnS1 { d, q, sign } | FamilySpec::OmegaOnN1 { d, q, sign, .. } => {
            projective(omega(u(*d), *q as u64, *sign)?)
        }
        FamilySpec::UnitaryOnS1 { d, q } | FamilySpec::UnitaryOnN1 { d, q } => projective(su(u(*d), *q as u64)),
        FamilySpec::WreathProduct { r, inner } => {
            num_traits::pow(group_order(inner)?, *r) * factorial(u(*r))
        }
        FamilySpec::Mathieu24 => BigUint::from(MATHIEU24_ORDER),
    })
}

/// `|G| ≤ m!^r · r!`.
pub fn large_base_order_bound(m: u64, r: u64) -> BigUint {
    num_traits::pow(factorial(m), r as usize) * factorial(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn classical_orders() {
        assert_eq!(gl(3, 2), n(168));
        assert_eq!(gl(2, 4), n(180));
        assert_eq!(sp(4, 2).unwrap(), n(720));
        assert_eq!(sp(6, 2).unwrap(), n(1_451_520));
        assert_eq!(go(4, 2, Sign::Minus).unwrap(), n(120)); // Sym(5)
        assert_eq!(go(6, 2, Sign::Plus).unwrap(), n(40320)); // Sym(8)
        assert_eq!(gu(3, 2), n(648));
        assert_eq!(su(4, 2), n(25920));
        assert_eq!(agl(3, 2), n(1344));
        assert_eq!(omega(7, 3, Sign::Circle).unwrap(), n(4_585_351_680));
    }

    #[test]
    fn projective_orders() {
        let psl32: FamilySpec = "LinearOnPk(d=3,q=2,k=1)".parse().unwrap();
        assert_eq!(group_order(&psl32).unwrap(), n(168));
        let psu33: FamilySpec = "UnitaryOnS1(d=3,q=3)".parse().unwrap();
        assert_eq!(group_order(&psu33).unwrap(), n(6048));
        let om8: FamilySpec = "OmegaOnS1(d=8,q=3,sign=+)".parse().unwrap();
        assert_eq!(scalars(&om8), Some(2));
        let om6: FamilySpec = "OmegaOnS1(d=6,q=3,sign=+)".parse().unwrap();
        assert_eq!(scalars(&om6), Some(1));
    }
}
