//! Explicit elements of small support, giving upper bounds for the minimal degree.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::affine::affine_map;
use super::symmetric::{k_subsets, subset_action};
use super::wreath::in_coordinate;
use super::{ConstructedAction, FamilyError, FamilySpec};
use crate::formulas::degree::binomial;
use crate::gf::{Field, Matrix, Sign};
use crate::Permutation;

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Short description of the element.
    pub recipe: String,
    #[serde(skip)]
    pub element: Permutation,
    pub support: usize,
    /// Closed-form support of the element, when the family has one.
    pub expected: Option<u64>,
}

fn pow(b: u64, e: usize) -> u64 {
    b.pow(e as u32)
}

/// The family's documented small-support element, if it has one. The element
/// is checked to lie in the group.
pub fn witness(action: &ConstructedAction) -> Result<Option<Witness>, FamilyError> {
    let Some((recipe, element, expected)) = recipe(action)? else {
        return Ok(None);
    };
    if !action.group.contains(&element)? {
        return Err(FamilyError::InvalidParameters(format!(
            "{}: witness `{recipe}` is not in the group",
            action.spec
        )));
    }
    Ok(Some(Witness {
        recipe,
        support: element.support_size(),
        element,
        expected,
    }))
}

type Recipe = (String, Permutation, Option<u64>);

fn recipe(action: &ConstructedAction) -> Result<Option<Recipe>, FamilyError> {
    let spec = &action.spec;
    let linear_image = |m: &Matrix| -> Result<Permutation, FamilyError> {
        let model = action.linear().expect("classical actions keep their domain");
        Ok(model.domain.action(m)?)
    };
    let reflections = |vs: &[&[u8]]| -> Result<Matrix, FamilyError> {
        let form = action.linear().and_then(|l| l.form.as_ref()).expect("orthogonal form");
        let d = form.dimension();
        let mut g = Matrix::identity(form.field(), d);
        for v in vs {
            let mut full = vec![0u8; d];
            full[..v.len()].copy_from_slice(v);
            g = g.mul(&form.reflection(&full)?)?;
        }
        Ok(g)
    };
    Ok(Some(match *spec {
        FamilySpec::SymSubsets { m, k } | FamilySpec::AltSubsets { m, k } => {
            let alt = matches!(spec, FamilySpec::AltSubsets { .. });
            let cycle: &[usize] = if alt { &[0, 1, 2] } else { &[0, 1] };
            let g = Permutation::from_cycles(m, &[cycle])?;
            let subsets = k_subsets(m, k);
            let index: HashMap<Vec<u32>, usize> = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
            let expected = binomial((m - 2) as u64, (k - 1) as u64) * cycle.len() as u64;
            (
                format!("{}-cycle on points", cycle.len()),
                subset_action(&g, &subsets, &index),
                expected.to_u64(),
            )
        }
        FamilySpec::Affine { d, q } => {
            let field = Field::get(q)?;
            let (qq, zero) = (q as u64, vec![0u8; d]);
            if d >= 2 {
                let t = Matrix::elementary(field, d, 0, 1, 1);
                ("transvection".into(), affine_map(&t, &zero), Some(pow(qq, d) - pow(qq, d - 1)))
            } else if q > 2 {
                let s = Matrix::diagonal(field, &[field.primitive_element()]);
                ("scalar".into(), affine_map(&s, &zero), Some(qq - 1))
            } else {
                ("translation".into(), affine_map(&Matrix::identity(field, 1), &[1]), Some(2))
            }
        }
        FamilySpec::LinearOnPk { d, q, k } => {
            let t = Matrix::elementary(Field::get(q)?, d, 0, 1, 1);
            let expected = (k == 1).then(|| pow(q as u64, d - 1));
            ("transvection".into(), linear_image(&t)?, expected)
        }
        FamilySpec::GOOnS1 { d, q: 2, sign: Sign::Minus } | FamilySpec::OmegaOnS1 { d, q: 2, sign: Sign::Minus } => {
            let g = reflections(&[&[1], &[0, 1]])?;
            let expected = 3 * (pow(2, d - 3) - pow(2, d / 2 - 2));
            ("r_e1 r_e2".into(), linear_image(&g)?, Some(expected))
        }
        FamilySpec::GOOnN1 { d, q: 2, sign: Sign::Minus, .. } | FamilySpec::OmegaOnN1 { d, q: 2, sign: Sign::Minus, .. } => {
            let g = reflections(&[&[1], &[0, 1]])?;
            let expected = 3 * (pow(2, d - 3) + pow(2, d / 2 - 2));
            ("r_e1 r_e2".into(), linear_image(&g)?, Some(expected))
        }
        FamilySpec::GOOnN1 { d, q: 2, sign: Sign::Plus, .. } | FamilySpec::OmegaOnN1 { d, q: 2, sign: Sign::Plus, .. } => {
            let g = reflections(&[&[1, 1], &[0, 0, 1, 1]])?;
            let expected = 3 * (pow(2, d - 3) - pow(2, d / 2 - 2));
            ("r_(e1+e2) r_(e3+e4)".into(), linear_image(&g)?, Some(expected))
        }
        FamilySpec::WreathProduct { r, .. } => {
            let inner = action.inner().expect("wreath products keep their component");
            let Some(w) = witness(inner)? else {
                return Ok(None);
            };
            let expected = w.expected.map(|e| e * pow(inner.n as u64, r - 1));
            (
                format!("({}, 1, …, 1)", w.recipe),
                in_coordinate(&w.element, 0, r),
                expected,
            )
        }
        _ => return Ok(None),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build;

    fn support(s: &str) -> (usize, Option<u64>) {
        let a = build(&s.parse().unwrap()).unwrap();
        let w = witness(&a).unwrap().unwrap();
        (w.support, w.expected)
    }

    #[test]
    fn three_cycle_on_triples() {
        assert_eq!(support("AltSubsets(m=7,k=3)"), (30, Some(30)));
    }

    #[test]
    fn elliptic_quadric_reflection_product() {
        assert_eq!(support("OmegaOnS1(d=8,q=2,sign=-)"), (84, Some(84)));
        assert_eq!(support("GOOnS1(d=6,q=2,sign=-)"), (18, Some(18)));
    }

    #[test]
    fn wreath_witness_scales() {
        assert_eq!(support("WreathProduct(r=2,inner=SymSubsets(m=5,k=2))"), (60, Some(60)));
    }

    #[test]
    fn linear_and_affine() {
        assert_eq!(support("LinearOnPk(d=4,q=2,k=1)"), (8, Some(8)));
        assert_eq!(support("Affine(d=3,q=2)"), (4, Some(4)));
        assert_eq!(support("Affine(d=1,q=2)"), (2, Some(2)));
    }
}
