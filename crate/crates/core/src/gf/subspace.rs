use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Field, Form, FormKind, GfError, Matrix, Sign};
use crate::perm::Permutation;

/// Which nondegenerate subspaces a domain keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NondegenerateFilter {
    Any,
    /// 1-spaces `⟨v⟩` with `Q(v)` a nonzero square (odd `q`).
    SquareNorm,
    /// 1-spaces `⟨v⟩` with `Q(v)` a nonsquare (odd `q`).
    NonSquareNorm,
    /// Subspaces on which the form has the given type.
    Sign(Sign),
    /// Subspaces whose perpendicular space has the given type.
    PerpSign(Sign),
}

/// The three kinds of subspace domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainKind {
    /// `P_k`: all `k`-subspaces.
    All,
    /// `S_k`: totally singular (totally isotropic) `k`-subspaces.
    TotallySingular,
    /// `N_k`: nondegenerate `k`-subspaces (nonsingular points for `k = 1`).
    Nondegenerate(NondegenerateFilter),
}

/// Above this many `k`-subspaces, exhaustive enumeration is refused.
pub const ENUMERATION_LIMIT: u64 = 5_000_000;

/// A canonically ordered set of `k`-subspaces of `GF(q)^d`.
///
/// Each member is stored as its reduced row echelon basis; members are sorted
/// lexicographically by their flattened entries.
#[derive(Clone, Debug)]
pub struct SubspaceDomain {
    field: &'static Field,
    d: usize,
    k: usize,
    kind: DomainKind,
    members: Vec<Box<[u8]>>,
    index: HashMap<Box<[u8]>, u32>,
}

impl SubspaceDomain {
    /// Exhaustive enumeration of the members of a domain.
    pub fn enumerate(
        field: &'static Field,
        d: usize,
        k: usize,
        kind: DomainKind,
        form: Option<&Form>,
    ) -> Result<SubspaceDomain, GfError> {
        if k == 0 || k > d {
            return Err(GfError::EmptyDomain(format!("no {k}-subspaces of a {d}-space")));
        }
        if let Some(f) = form {
            if f.dimension() != d || f.field().q() != field.q() {
                return Err(GfError::DimensionMismatch {
                    expected: d,
                    found: f.dimension(),
                });
            }
        } else if kind != DomainKind::All {
            return Err(GfError::InvalidForm("this domain needs a form".into()));
        }
        let total = gaussian_binomial(field.q() as u64, d, k);
        if total > ENUMERATION_LIMIT {
            return Err(GfError::TooLarge(total));
        }
        let mut members = Vec::new();
        for_each_rref(field.q(), d, k, |basis| {
            let m = Matrix::from_flat(field, k, d, basis.to_vec());
            if accepts(kind, form, &m) {
                members.push(basis.to_vec().into_boxed_slice());
            }
        });
        if members.is_empty() {
            return Err(GfError::EmptyDomain(format!("{kind:?} with k = {k}, d = {d}")));
        }
        Ok(Self::from_members(field, d, k, kind, members))
    }

    /// The orbit of `seed` under the group generated by `generators`.
    pub fn orbit(
        seed: &Matrix,
        generators: &[Matrix],
        kind: DomainKind,
        limit: usize,
    ) -> Result<SubspaceDomain, GfError> {
        let field = seed.field();
        let d = seed.cols();
        let start = seed.rref();
        let k = start.rows();
        if k == 0 {
            return Err(GfError::EmptyDomain("zero subspace".into()));
        }
        let mut seen: HashMap<Box<[u8]>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        let key: Box<[u8]> = start.entries().into();
        seen.insert(key.clone(), ());
        queue.push_back(key);
        let mut members = Vec::new();
        while let Some(m) = queue.pop_front() {
            let basis = Matrix::from_flat(field, k, d, m.to_vec());
            for g in generators {
                let img: Box<[u8]> = basis.mul(g)?.rref().entries().into();
                if !seen.contains_key(&img) {
                    if seen.len() >= limit {
                        return Err(GfError::TooLarge(limit as u64 + 1));
                    }
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
            members.push(m);
        }
        Ok(Self::from_members(field, d, k, kind, members))
    }

    fn from_members(
        field: &'static Field,
        d: usize,
        k: usize,
        kind: DomainKind,
        mut members: Vec<Box<[u8]>>,
    ) -> SubspaceDomain {
        members.sort();
        members.dedup();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        SubspaceDomain {
            field,
            d,
            k,
            kind,
            members,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn subspace_dimension(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn member(&self, i: usize) -> Matrix {
        Matrix::from_flat(self.field, self.k, self.d, self.members[i].to_vec())
    }

    /// Index of the row space of `basis`, if it is a member.
    pub fn index_of(&self, basis: &Matrix) -> Option<usize> {
        let r = basis.rref();
        self.index.get(r.entries()).map(|&i| i as usize)
    }

    /// Printable label: rows of the echelon basis separated by `|`.
    pub fn label(&self, i: usize) -> String {
        self.members[i]
            .chunks(self.d)
            .map(|row| row.iter().map(|x| x.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// The permutation induced by `m` on the members.
    pub fn action(&self, m: &Matrix) -> Result<Permutation, GfError> {
        if m.rows() != self.d || m.cols() != self.d {
            return Err(GfError::DimensionMismatch {
                expected: self.d,
                found: m.rows(),
            });
        }
        let mut images = Vec::with_capacity(self.len());
        let mut row = vec![0u8; self.d];
        for member in &self.members {
            let mut img = Vec::with_capacity(self.k * self.d);
            for r in member.chunks(self.d) {
                m.apply_into(r, &mut row);
                img.extend_from_slice(&row);
            }
            let img = Matrix::from_flat(self.field, self.k, self.d, img).rref();
            match self.index.get(img.entries()) {
                Some(&j) => images.push(j as usize),
                None => return Err(GfError::NotPreserved),
            }
        }
        Permutation::from_images(images).map_err(|_| GfError::NotPreserved)
    }
}

/// True if the row space of `basis` belongs to a domain of the given kind.
pub fn accepts(kind: DomainKind, form: Option<&Form>, basis: &Matrix) -> bool {
    let form = match (kind, form) {
        (DomainKind::All, _) => return true,
        (_, Some(f)) => f,
        (_, None) => return false,
    };
    let k = basis.rows();
    match kind {
        DomainKind::All => true,
        DomainKind::TotallySingular => (0..k).all(|i| {
            form.is_singular(basis.row(i))
                && (i + 1..k).all(|j| form.polar_unchecked(basis.row(i), basis.row(j)) == 0)
        }),
        DomainKind::Nondegenerate(filter) => {
            // A 1-space in even characteristic is nonsingular when Q(v) != 0,
            // although the polar form vanishes on it.
            if k == 1 && form.kind() == FormKind::Quadratic && form.field().characteristic() == 2 {
                return filter == NondegenerateFilter::Any && !form.is_singular(basis.row(0));
            }
            let Ok(restricted) = form.restrict(basis) else {
                return false;
            };
            let field = form.field();
            match filter {
                NondegenerateFilter::Any => true,
                NondegenerateFilter::SquareNorm | NondegenerateFilter::NonSquareNorm => {
                    if k != 1 || form.kind() != FormKind::Quadratic || field.characteristic() == 2 {
                        return false;
                    }
                    let square = field.is_square(form.eval_unchecked(basis.row(0)));
                    square == (filter == NondegenerateFilter::SquareNorm)
                }
                NondegenerateFilter::Sign(s) => restricted.sign() == Some(s),
                NondegenerateFilter::PerpSign(s) => form
                    .restrict(&form.perp(basis))
                    .is_ok_and(|p| p.sign() == Some(s)),
            }
        }
    }
}

/// Number of `k`-subspaces of `GF(q)^d`.
pub fn gaussian_binomial(q: u64, d: usize, k: usize) -> u64 {
    if k > d {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((d - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    u64::try_from(num / den).unwrap_or(u64::MAX)
}

/// Calls `visit` with the flattened RREF basis of every `k`-subspace.
fn for_each_rref(q: u32, d: usize, k: usize, mut visit: impl FnMut(&[u8])) {
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..d {
                if !pivots.contains(&j) {
                    free.push(i * d + j);
                }
            }
        }
        let mut buf = vec![0u8; k * d];
        for (i, &p) in pivots.iter().enumerate() {
            buf[i * d + p] = 1;
        }
        let mut digits = vec![0u8; free.len()];
        loop {
            for (slot, &pos) in digits.iter().zip(&free) {
                buf[pos] = *slot;
            }
            visit(&buf);
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if (digits[i] as u32) < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        // Next k-combination of 0..d.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < d - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane() {
        let f = Field::get(2).unwrap();
        let p1 = SubspaceDomain::enumerate(f, 3, 1, DomainKind::All, None).unwrap();
        assert_eq!(p1.len(), 7);
        assert_eq!(p1.label(0), "001");
        let p2 = SubspaceDomain::enumerate(f, 3, 2, DomainKind::All, None).unwrap();
        assert_eq!(p2.len(), 7);
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        for (q, d, k) in [(2u32, 4, 2), (3, 4, 2), (4, 3, 1), (5, 3, 2), (9, 2, 1)] {
            let f = Field::get(q).unwrap();
            let dom = SubspaceDomain::enumerate(f, d, k, DomainKind::All, None).unwrap();
            assert_eq!(dom.len() as u64, gaussian_binomial(q as u64, d, k));
        }
    }

    #[test]
    fn elliptic_singular_points() {
        let form = Form::standard(FormKind::Quadratic, 6, 2, Some(Sign::Minus)).unwrap();
        let dom =
            SubspaceDomain::enumerate(form.field(), 6, 1, DomainKind::TotallySingular, Some(&form))
                .unwrap();
        assert_eq!(dom.len(), 27);
    }

    #[test]
    fn parabolic_nonsingular_points_split_by_perp_type() {
        let form = Form::standard(FormKind::Quadratic, 5, 3, Some(Sign::Circle)).unwrap();
        let count = |filter| {
            SubspaceDomain::enumerate(
                form.field(),
                5,
                1,
                DomainKind::Nondegenerate(filter),
                Some(&form),
            )
            .unwrap()
            .len()
        };
        // q^m (q^m ± 1) / 2 with q = 3, m = 2.
        assert_eq!(count(NondegenerateFilter::PerpSign(Sign::Plus)), 45);
        assert_eq!(count(NondegenerateFilter::PerpSign(Sign::Minus)), 36);
        assert_eq!(
            count(NondegenerateFilter::SquareNorm) + count(NondegenerateFilter::NonSquareNorm),
            81
        );
    }

    #[test]
    fn totally_singular_beyond_witt_index_is_empty() {
        let form = Form::standard(FormKind::Quadratic, 4, 2, Some(Sign::Minus)).unwrap();
        assert!(matches!(
            SubspaceDomain::enumerate(form.field(), 4, 2, DomainKind::TotallySingular, Some(&form)),
            Err(GfError::EmptyDomain(_))
        ));
    }

    #[test]
    fn scalar_matrix_acts_trivially() {
        let f = Field::get(5).unwrap();
        let dom = SubspaceDomain::enumerate(f, 3, 1, DomainKind::All, None).unwrap();
        let s = Matrix::diagonal(f, &[3, 3, 3]);
        assert!(dom.action(&s).unwrap().is_identity());
        assert!(dom.action(&Matrix::identity(f, 3)).unwrap().is_identity());
    }

    #[test]
    fn orbit_matches_enumeration() {
        let f = Field::get(3).unwrap();
        let gens = vec![
            Matrix::elementary(f, 3, 0, 1, 1),
            Matrix::from_rows(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap(),
        ];
        let seed = Matrix::from_rows(f, &[vec![1, 0, 0]]).unwrap();
        let orbit = SubspaceDomain::orbit(&seed, &gens, DomainKind::All, 1000).unwrap();
        let all = SubspaceDomain::enumerate(f, 3, 1, DomainKind::All, None).unwrap();
        assert_eq!(orbit.len(), all.len());
        for i in 0..all.len() {
            assert_eq!(orbit.label(i), all.label(i));
        }
    }
}
