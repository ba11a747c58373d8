use std::collections::HashSet;

use serde::Serialize;

use super::base::is_base;
use super::mindeg::{minimal_degree_exact, MuOptions};
use super::InvariantError;
use crate::families::{ConstructedAction, FamilySpec};
use crate::gf::vectors::{index_to_vector, vector_to_index};

/// Fixed-space data of the linear part `H` of an affine group over `GF(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineMuStructure {
    pub d: usize,
    /// Largest dimension of the fixed space of a nonidentity element of `H`.
    pub t: usize,
    /// `2^d − 2^t`.
    pub mu_linear: usize,
    /// Vector indices of a basis `v_1, …, v_t` of that fixed space.
    pub fix_basis: Vec<usize>,
    /// `v_1, …, v_{t+1}`: the basis and one vector outside the fixed space.
    pub base: Vec<usize>,
}

fn xor(a: usize, b: usize, d: usize) -> usize {
    let (u, v) = (index_to_vector(a, 2, d), index_to_vector(b, 2, d));
    let w: Vec<u8> = u.iter().zip(&v).map(|(x, y)| x ^ y).collect();
    vector_to_index(&w, 2)
}

/// Finds the nonidentity linear element with the largest fixed space and checks
/// that a basis of that space plus one more vector is a base for `H`.
pub fn affine_mu_structure(action: &ConstructedAction) -> Result<AffineMuStructure, InvariantError> {
    let FamilySpec::Affine { d, q: 2 } = action.spec else {
        return Err(InvariantError::NotApplicable(format!("{}: needs an affine group over GF(2)", action.spec)));
    };
    // The stabilizer of the zero vector (index 0) is the linear part.
    let h = action.group.pointwise_stabilizer(&[0])?;
    if h.is_trivial() {
        return Err(InvariantError::TrivialGroup);
    }
    let opts = MuOptions {
        reduce_transitive: false,
        ..Default::default()
    };
    let m = minimal_degree_exact(&h, &opts)?;
    let n = action.n;
    let fixed = m.witness.fixed_points();
    let t = fixed.len().trailing_zeros() as usize;
    if fixed.len() != 1 << t {
        return Err(InvariantError::Inconsistent(format!("fixed set of size {} is not a subspace", fixed.len())));
    }
    let mut span: HashSet<usize> = HashSet::from([0]);
    let mut fix_basis = Vec::new();
    for &v in &fixed {
        if !span.contains(&v) {
            let shifted: Vec<usize> = span.iter().map(|&s| xor(s, v, d)).collect();
            span.extend(shifted);
            fix_basis.push(v);
        }
    }
    if fix_basis.len() != t {
        return Err(InvariantError::Inconsistent(format!("fixed space has {} basis vectors, expected {t}", fix_basis.len())));
    }
    let outside = (0..n).find(|v| !span.contains(v)).expect("nonidentity element moves some vector");
    let mut base = fix_basis.clone();
    base.push(outside);
    if !is_base(&h, &base) {
        return Err(InvariantError::Inconsistent(format!("{base:?} is not a base for the linear part")));
    }
    Ok(AffineMuStructure {
        d,
        t,
        mu_linear: n - (1 << t),
        fix_basis,
        base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build;

    fn structure(s: &str) -> Result<AffineMuStructure, InvariantError> {
        affine_mu_structure(&build(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn transvection_fixes_a_hyperplane() {
        for d in 2..=5 {
            let s = structure(&format!("Affine(d={d},q=2)")).unwrap();
            assert_eq!(s.t, d - 1);
            assert_eq!(s.mu_linear, (1 << d) - (1 << (d - 1)));
            assert_eq!(s.base.len(), d);
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(structure("Affine(d=1,q=2)"), Err(InvariantError::TrivialGroup)));
        assert!(matches!(structure("Affine(d=2,q=3)"), Err(InvariantError::NotApplicable(_))));
    }
}
