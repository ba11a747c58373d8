use super::classical::sl_generators;
use super::{validated_group, ConstructedAction, FamilyError, FamilySpec};
use crate::formulas::group_order;
use crate::gf::vectors::{all_vectors, index_to_vector, vector_to_index};
use crate::gf::{Field, Matrix};
use crate::Permutation;

/// Generators of `GL_d(q)`: those of `SL_d(q)` and `diag(ω, 1, …, 1)`.
pub(crate) fn gl_generators(field: &'static Field, d: usize) -> Vec<Matrix> {
    let mut gens = sl_generators(field, d);
    let mut diag = vec![1u8; d];
    diag[0] = field.primitive_element();
    gens.push(Matrix::diagonal(field, &diag));
    gens.retain(|m| !m.is_identity());
    gens
}

/// The permutation of `GF(q)^d` given by `v ↦ v·m + t`.
pub(crate) fn affine_map(m: &Matrix, t: &[u8]) -> Permutation {
    let f = m.field();
    let d = m.rows();
    let images = all_vectors(f.q(), d).map(|v| {
        let img: Vec<u8> = m.apply(&v).expect("dimension").iter().zip(t).map(|(&a, &b)| f.add(a, b)).collect();
        vector_to_index(&img, f.q())
    });
    Permutation::from_images(images).expect("affine maps are bijections")
}

pub(super) fn affine(spec: &FamilySpec, d: usize, q: u32) -> Result<ConstructedAction, FamilyError> {
    let field = Field::get(q)?;
    let zero = vec![0u8; d];
    let mut e1 = zero.clone();
    e1[0] = 1;
    let mut gens = vec![affine_map(&Matrix::identity(field, d), &e1)];
    gens.extend(gl_generators(field, d).iter().map(|m| affine_map(m, &zero)));
    let n = (q as usize).pow(d as u32);
    let group = validated_group(spec, n, gens, &group_order(spec)?)?;
    let labels = (0..n)
        .map(|i| index_to_vector(i, q, d).iter().map(|x| x.to_string()).collect())
        .collect();
    Ok(ConstructedAction::new(spec.clone(), group, labels))
}
