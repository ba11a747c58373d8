//! `Sp_d(2)` acting on the quadratic forms that polarize to its symplectic form.

use std::collections::HashMap;

use super::classical::sp_generators;
use super::{validated_group, ConstructedAction, FamilyError, FamilySpec};
use crate::formulas::group_order;
use crate::gf::vectors::{all_vectors, index_to_vector};
use crate::gf::{Form, FormKind, Matrix, Sign};
use crate::Permutation;

/// `Q_c(x) = Σ c_i x_i + Σ_{i<j} B(e_i, e_j) x_i x_j` over `GF(2)`.
fn evaluate(gram: &Matrix, c: &[u8], x: &[u8]) -> u8 {
    let d = c.len();
    let mut acc = 0u8;
    for i in 0..d {
        if x[i] == 0 {
            continue;
        }
        acc ^= c[i];
        for j in i + 1..d {
            acc ^= x[j] & gram.get(i, j);
        }
    }
    acc
}

fn sign_of(gram: &Matrix, c: &[u8]) -> Sign {
    let d = c.len();
    let singular = all_vectors(2, d).filter(|x| evaluate(gram, c, x) == 0).count();
    if singular == (1 << (d - 1)) + (1 << (d / 2 - 1)) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// The forms `Q_c` of the given type act as `Q ↦ Q^M`, `Q^M(x) = Q(x M⁻¹)`.
pub(super) fn sp_on_forms(spec: &FamilySpec, d: usize, sign: Sign) -> Result<ConstructedAction, FamilyError> {
    let symplectic = Form::standard(FormKind::Symplectic, d, 2, None)?;
    let gram = symplectic.gram().clone();
    let forms: Vec<Vec<u8>> = (0..1usize << d)
        .map(|i| index_to_vector(i, 2, d))
        .filter(|c| sign_of(&gram, c) == sign)
        .collect();
    let index: HashMap<&[u8], usize> = forms.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut gens = Vec::new();
    for m in sp_generators(&symplectic)? {
        let inv = m.inverse()?;
        let images = forms.iter().map(|c| {
            let image: Vec<u8> = (0..d).map(|i| evaluate(&gram, c, inv.row(i))).collect();
            index[image.as_slice()]
        });
        gens.push(Permutation::from_images(images)?);
    }
    let group = validated_group(spec, forms.len(), gens, &group_order(spec)?)?;
    let labels = forms.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
    Ok(ConstructedAction::new(spec.clone(), group, labels))
}
