use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::vectors::all_vectors;
use super::{Field, GfError, Matrix};

/// Type of a quadratic form: hyperbolic (+), elliptic (−) or parabolic (∘).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
    Circle,
}

impl Sign {
    /// `+1`, `-1` or `0`.
    pub fn epsilon(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Circle => 0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Circle => "o",
        })
    }
}

impl FromStr for Sign {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            "o" | "0" | "circle" | "∘" => Ok(Sign::Circle),
            _ => Err(GfError::InvalidForm(format!("unknown sign `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Symplectic,
    Hermitian,
    Quadratic,
}

/// A nondegenerate classical form on `GF(q)^d`.
///
/// `gram` holds the bilinear (or hermitian) form `B(x, y) = x·G·yᵀ`, with `y`
/// conjugated in the hermitian case. Quadratic forms also keep the upper
/// triangular coefficients `c_ij` of `Q(x) = Σ_{i≤j} c_ij x_i x_j`; their
/// `gram` is the polarization `B(x, y) = Q(x+y) − Q(x) − Q(y)`.
#[derive(Clone, Debug)]
pub struct Form {
    kind: FormKind,
    sign: Option<Sign>,
    field: &'static Field,
    gram: Matrix,
    coefficients: Option<Matrix>,
}

/// Above this many vectors the type of a quadratic form in even characteristic
/// is not classified by counting.
const COUNT_LIMIT: usize = 1 << 24;

impl Form {
    /// The pinned forms:
    /// - symplectic: standard pairs `(e_1, e_2), (e_3, e_4), …`;
    /// - hermitian: `Σ x_i y_i^√q`;
    /// - hyperbolic: `X_1X_2 + X_2X_3 + … + X_{d-1}X_d`;
    /// - elliptic: `X_1² + X_1X_2 + ζX_2²` plus the chain on `X_3 … X_d`, with
    ///   `ζ` the smallest element making `t² + t + ζ` irreducible;
    /// - parabolic (odd `d`, odd `q`): `X_1²` plus the chain on `X_2 … X_d`.
    pub fn standard(kind: FormKind, d: usize, q: u32, sign: Option<Sign>) -> Result<Form, GfError> {
        let field = Field::get(q)?;
        let bad = |msg: String| Err(GfError::InvalidForm(msg));
        match kind {
            FormKind::Symplectic => {
                if sign.is_some() {
                    return bad("symplectic forms carry no sign".into());
                }
                if d == 0 || d % 2 != 0 {
                    return bad(format!("symplectic form needs even dimension, got {d}"));
                }
                let mut g = Matrix::zeros(field, d, d);
                for i in (0..d).step_by(2) {
                    g.set(i, i + 1, 1);
                    g.set(i + 1, i, field.neg(1));
                }
                Form::from_gram(FormKind::Symplectic, g)
            }
            FormKind::Hermitian => {
                if sign.is_some() {
                    return bad("hermitian forms carry no sign".into());
                }
                if field.degree() % 2 != 0 {
                    return bad(format!("hermitian form needs a square field size, got {q}"));
                }
                if d == 0 {
                    return bad("dimension must be positive".into());
                }
                Form::from_gram(FormKind::Hermitian, Matrix::identity(field, d))
            }
            FormKind::Quadratic => {
                let sign = match sign {
                    Some(s) => s,
                    None => return bad("quadratic form needs a sign".into()),
                };
                let mut c = Matrix::zeros(field, d, d);
                let chain = |c: &mut Matrix, from: usize| {
                    for i in from..d.saturating_sub(1) {
                        c.set(i, i + 1, 1);
                    }
                };
                match sign {
                    Sign::Plus => {
                        if d == 0 || d % 2 != 0 {
                            return bad(format!("hyperbolic form needs even dimension, got {d}"));
                        }
                        chain(&mut c, 0);
                    }
                    Sign::Minus => {
                        if d == 0 || d % 2 != 0 {
                            return bad(format!("elliptic form needs even dimension, got {d}"));
                        }
                        let zeta = (1..q as u8)
                            .find(|&z| {
                                field
                                    .elements()
                                    .all(|t| field.add(field.add(field.mul(t, t), t), z) != 0)
                            })
                            .expect("an irreducible t^2 + t + z exists");
                        c.set(0, 0, 1);
                        c.set(0, 1, 1);
                        c.set(1, 1, zeta);
                        chain(&mut c, 2);
                    }
                    Sign::Circle => {
                        if d % 2 != 1 {
                            return bad(format!("parabolic form needs odd dimension, got {d}"));
                        }
                        if field.characteristic() == 2 {
                            return bad("parabolic forms are only supported for odd q".into());
                        }
                        c.set(0, 0, 1);
                        chain(&mut c, 1);
                    }
                }
                let form = Form::from_coefficients(c)?;
                if form.sign != Some(sign) {
                    return Err(GfError::InvalidForm(format!(
                        "constructed form has type {:?}, expected {sign}",
                        form.sign
                    )));
                }
                Ok(form)
            }
        }
    }

    /// A symplectic or hermitian form from its Gram matrix.
    pub fn from_gram(kind: FormKind, gram: Matrix) -> Result<Form, GfError> {
        let field = gram.field();
        let d = gram.rows();
        if gram.cols() != d {
            return Err(GfError::DimensionMismatch {
                expected: d,
                found: gram.cols(),
            });
        }
        match kind {
            FormKind::Symplectic => {
                for i in 0..d {
                    if gram.get(i, i) != 0 {
                        return Err(GfError::InvalidForm("symplectic form is not alternating".into()));
                    }
                    for j in 0..d {
                        if gram.get(i, j) != field.neg(gram.get(j, i)) {
                            return Err(GfError::InvalidForm("symplectic form is not skew".into()));
                        }
                    }
                }
            }
            FormKind::Hermitian => {
                for i in 0..d {
                    for j in 0..d {
                        if gram.get(i, j) != field.conjugate(gram.get(j, i))? {
                            return Err(GfError::InvalidForm("form is not hermitian".into()));
                        }
                    }
                }
            }
            FormKind::Quadratic => {
                return Err(GfError::InvalidForm(
                    "quadratic forms are built from coefficients".into(),
                ))
            }
        }
        if gram.det()? == 0 {
            return Err(GfError::InvalidForm("form is degenerate".into()));
        }
        Ok(Form {
            kind,
            sign: None,
            field,
            gram,
            coefficients: None,
        })
    }

    /// A nondegenerate quadratic form from upper triangular coefficients; its
    /// type is computed.
    pub fn from_coefficients(coefficients: Matrix) -> Result<Form, GfError> {
        let field = coefficients.field();
        let d = coefficients.rows();
        let mut c = coefficients;
        for i in 0..d {
            for j in 0..i {
                if c.get(i, j) != 0 {
                    let v = field.add(c.get(j, i), c.get(i, j));
                    c.set(j, i, v);
                    c.set(i, j, 0);
                }
            }
        }
        let mut gram = Matrix::zeros(field, d, d);
        for i in 0..d {
            for j in 0..d {
                let v = if i == j {
                    field.add(c.get(i, i), c.get(i, i))
                } else if i < j {
                    c.get(i, j)
                } else {
                    c.get(j, i)
                };
                gram.set(i, j, v);
            }
        }
        let mut form = Form {
            kind: FormKind::Quadratic,
            sign: None,
            field,
            gram,
            coefficients: Some(c),
        };
        form.sign = Some(form.classify()?);
        Ok(form)
    }

    fn classify(&self) -> Result<Sign, GfError> {
        let d = self.dimension();
        let q = self.field.q();
        if self.field.characteristic() != 2 {
            let det = self.gram.det()?;
            if det == 0 {
                return Err(GfError::InvalidForm("quadratic form is degenerate".into()));
            }
            if d % 2 == 1 {
                return Ok(Sign::Circle);
            }
            let disc = if (d / 2) % 2 == 1 { self.field.neg(det) } else { det };
            return Ok(if self.field.is_square(disc) { Sign::Plus } else { Sign::Minus });
        }
        if d % 2 == 1 || self.gram.det()? == 0 {
            return Err(GfError::InvalidForm(
                "quadratic form is degenerate or has odd dimension in even characteristic".into(),
            ));
        }
        if (q as usize).pow(d as u32) > COUNT_LIMIT {
            return Err(GfError::InvalidForm("form too large to classify".into()));
        }
        let singular = self.count_singular_vectors();
        let base = (q as i64).pow(d as u32 - 1);
        let m = d as u32 / 2;
        let gap = (q as i64).pow(m) - (q as i64).pow(m - 1);
        match singular as i64 - base {
            x if x == gap => Ok(Sign::Plus),
            x if x == -gap => Ok(Sign::Minus),
            _ => Err(GfError::InvalidForm("singular vector count matches no type".into())),
        }
    }

    /// Number of vectors `v` (including 0) with `Q(v) = 0` (isotropic for
    /// symplectic and hermitian forms).
    pub fn count_singular_vectors(&self) -> usize {
        all_vectors(self.field.q(), self.dimension())
            .filter(|v| self.is_singular(v))
            .count()
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn sign(&self) -> Option<Sign> {
        self.sign
    }

    pub fn dimension(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Upper triangular coefficients of a quadratic form.
    pub fn coefficients(&self) -> Option<&Matrix> {
        self.coefficients.as_ref()
    }

    fn check_dim(&self, v: &[u8]) -> Result<(), GfError> {
        if v.len() != self.dimension() {
            return Err(GfError::DimensionMismatch {
                expected: self.dimension(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `Q(v)` for quadratic forms, `B(v, v)` otherwise.
    pub fn evaluate(&self, v: &[u8]) -> Result<u8, GfError> {
        self.check_dim(v)?;
        Ok(self.eval_unchecked(v))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, v: &[u8]) -> u8 {
        let f = self.field;
        match &self.coefficients {
            Some(c) => {
                let d = v.len();
                let mut acc = 0u8;
                for i in 0..d {
                    if v[i] == 0 {
                        continue;
                    }
                    let mut row = 0u8;
                    for j in i..d {
                        let cij = c.get(i, j);
                        if cij != 0 && v[j] != 0 {
                            row = f.add(row, f.mul(cij, v[j]));
                        }
                    }
                    acc = f.add(acc, f.mul(v[i], row));
                }
                acc
            }
            None => self.polar_unchecked(v, v),
        }
    }

    pub fn polar(&self, u: &[u8], v: &[u8]) -> Result<u8, GfError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(self.polar_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn polar_unchecked(&self, u: &[u8], v: &[u8]) -> u8 {
        let f = self.field;
        let d = u.len();
        let mut acc = 0u8;
        for j in 0..d {
            if v[j] == 0 {
                continue;
            }
            let vj = if self.kind == FormKind::Hermitian {
                f.conjugate(v[j]).expect("square field")
            } else {
                v[j]
            };
            let mut col = 0u8;
            for i in 0..d {
                if u[i] != 0 {
                    col = f.add(col, f.mul(u[i], self.gram.get(i, j)));
                }
            }
            acc = f.add(acc, f.mul(col, vj));
        }
        acc
    }

    /// Singular for quadratic forms, isotropic otherwise.
    pub fn is_singular(&self, v: &[u8]) -> bool {
        self.eval_unchecked(v) == 0
    }

    /// True if `m` is an isometry of this form.
    pub fn preserved_by(&self, m: &Matrix) -> bool {
        let d = self.dimension();
        if m.rows() != d || m.cols() != d {
            return false;
        }
        let images: Vec<Vec<u8>> = (0..d).map(|i| m.row(i).to_vec()).collect();
        let basis: Vec<Vec<u8>> = (0..d)
            .map(|i| (0..d).map(|j| u8::from(i == j)).collect())
            .collect();
        for i in 0..d {
            if self.coefficients.is_some()
                && self.eval_unchecked(&images[i]) != self.eval_unchecked(&basis[i])
            {
                return false;
            }
            for j in 0..d {
                if self.polar_unchecked(&images[i], &images[j]) != self.gram.get(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// The form restricted to the row space of `basis` (rows independent).
    pub fn restrict(&self, basis: &Matrix) -> Result<Form, GfError> {
        let k = basis.rows();
        let f = self.field;
        match self.kind {
            FormKind::Quadratic => {
                let mut c = Matrix::zeros(f, k, k);
                for i in 0..k {
                    c.set(i, i, self.eval_unchecked(basis.row(i)));
                    for j in i + 1..k {
                        c.set(i, j, self.polar_unchecked(basis.row(i), basis.row(j)));
                    }
                }
                Form::from_coefficients(c)
            }
            _ => {
                let mut g = Matrix::zeros(f, k, k);
                for i in 0..k {
                    for j in 0..k {
                        g.set(i, j, self.polar_unchecked(basis.row(i), basis.row(j)));
                    }
                }
                Form::from_gram(self.kind, g)
            }
        }
    }

    /// Vectors orthogonal to every row of `basis`, as an RREF basis.
    pub fn perp(&self, basis: &Matrix) -> Matrix {
        let d = self.dimension();
        let f = self.field;
        // x ⟂ u  ⇔  Σ_i x_i (G σ(u)ᵀ)_i = 0: solve the linear system with columns G σ(u)ᵀ.
        let mut sys = Matrix::zeros(f, basis.rows(), d);
        for r in 0..basis.rows() {
            for i in 0..d {
                let mut e = vec![0u8; d];
                e[i] = 1;
                sys.set(r, i, self.polar_unchecked(&e, basis.row(r)));
            }
        }
        null_space(&sys)
    }

    /// Reflection `x ↦ x − B(x, v) Q(v)⁻¹ v` of a quadratic form.
    pub fn reflection(&self, v: &[u8]) -> Result<Matrix, GfError> {
        self.check_dim(v)?;
        if self.kind != FormKind::Quadratic {
            return Err(GfError::InvalidForm("reflections need a quadratic form".into()));
        }
        let qv = self.eval_unchecked(v);
        if qv == 0 {
            return Err(GfError::SingularVector);
        }
        let f = self.field;
        let inv = f.inv(qv)?;
        self.rank_one_update(v, |x| f.neg(f.mul(self.polar_unchecked(x, v), inv)))
    }

    /// Symplectic transvection `x ↦ x + λ B(x, v) v`, or the unitary
    /// transvection with the same formula for isotropic `v` and `λ + λ^√q = 0`.
    pub fn transvection(&self, v: &[u8], lambda: u8) -> Result<Matrix, GfError> {
        self.check_dim(v)?;
        let f = self.field;
        match self.kind {
            FormKind::Symplectic => {}
            FormKind::Hermitian => {
                if self.eval_unchecked(v) != 0 {
                    return Err(GfError::InvalidForm("unitary transvection needs an isotropic vector".into()));
                }
                if f.add(lambda, f.conjugate(lambda)?) != 0 {
                    return Err(GfError::InvalidForm("unitary transvection needs trace-zero scalar".into()));
                }
            }
            FormKind::Quadratic => {
                return Err(GfError::InvalidForm("use reflections for quadratic forms".into()))
            }
        }
        if v.iter().all(|&x| x == 0) {
            return Err(GfError::SingularVector);
        }
        self.rank_one_update(v, |x| f.mul(lambda, self.polar_unchecked(x, v)))
    }

    /// Unitary reflection `x ↦ x + (λ − 1) h(x, v) h(v, v)⁻¹ v` with `λ^(√q+1) = 1`.
    pub fn unitary_reflection(&self, v: &[u8], lambda: u8) -> Result<Matrix, GfError> {
        self.check_dim(v)?;
        if self.kind != FormKind::Hermitian {
            return Err(GfError::InvalidForm("unitary reflections need a hermitian form".into()));
        }
        let f = self.field;
        let hv = self.eval_unchecked(v);
        if hv == 0 {
            return Err(GfError::SingularVector);
        }
        let r = f.subfield_order()? as u64;
        if f.pow(lambda, r + 1) != 1 {
            return Err(GfError::InvalidForm("scalar is not of norm one".into()));
        }
        let coeff = f.mul(f.sub(lambda, 1), f.inv(hv)?);
        self.rank_one_update(v, |x| f.mul(coeff, self.polar_unchecked(x, v)))
    }

    /// Matrix of `x ↦ x + s(x) v`.
    fn rank_one_update(&self, v: &[u8], s: impl Fn(&[u8]) -> u8) -> Result<Matrix, GfError> {
        let d = self.dimension();
        let f = self.field;
        let mut m = Matrix::identity(f, d);
        for i in 0..d {
            let mut e = vec![0u8; d];
            e[i] = 1;
            let c = s(&e);
            for j in 0..d {
                let x = f.add(m.get(i, j), f.mul(c, v[j]));
                m.set(i, j, x);
            }
        }
        if !self.preserved_by(&m) {
            return Err(GfError::InvalidForm("constructed element is not an isometry".into()));
        }
        Ok(m)
    }
}

/// RREF basis of `{x : sys·xᵀ = 0}`.
pub fn null_space(sys: &Matrix) -> Matrix {
    let f = sys.field();
    let d = sys.cols();
    let r = sys.rref();
    let pivots: Vec<usize> = (0..r.rows())
        .map(|i| (0..d).find(|&j| r.get(i, j) != 0).expect("nonzero row"))
        .collect();
    let free: Vec<usize> = (0..d).filter(|j| !pivots.contains(j)).collect();
    let mut out = Matrix::zeros(f, free.len(), d);
    for (row, &fc) in free.iter().enumerate() {
        out.set(row, fc, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            out.set(row, pc, f.neg(r.get(i, fc)));
        }
    }
    out.rref()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, i: usize) -> Vec<u8> {
        (0..d).map(|j| u8::from(i == j)).collect()
    }

    #[test]
    fn elliptic_and_hyperbolic_basis_values() {
        let ell = Form::standard(FormKind::Quadratic, 4, 2, Some(Sign::Minus)).unwrap();
        assert_eq!(ell.evaluate(&e(4, 0)).unwrap(), 1);
        let hyp = Form::standard(FormKind::Quadratic, 6, 2, Some(Sign::Plus)).unwrap();
        for i in 0..6 {
            assert_eq!(hyp.evaluate(&e(6, i)).unwrap(), 0);
        }
    }

    #[test]
    fn singular_point_counts() {
        let hyp = Form::standard(FormKind::Quadratic, 6, 2, Some(Sign::Plus)).unwrap();
        assert_eq!(hyp.count_singular_vectors() - 1, 35);
        let ell = Form::standard(FormKind::Quadratic, 6, 2, Some(Sign::Minus)).unwrap();
        assert_eq!(ell.count_singular_vectors() - 1, 27);
        let sp = Form::standard(FormKind::Symplectic, 4, 2, None).unwrap();
        assert_eq!(sp.count_singular_vectors() - 1, 15);
    }

    #[test]
    fn all_standard_forms_have_requested_type() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for d in [2, 4, 6] {
                for s in [Sign::Plus, Sign::Minus] {
                    let f = Form::standard(FormKind::Quadratic, d, q, Some(s)).unwrap();
                    assert_eq!(f.sign(), Some(s));
                }
            }
        }
        for q in [3, 5, 7] {
            let f = Form::standard(FormKind::Quadratic, 5, q, Some(Sign::Circle)).unwrap();
            assert_eq!(f.count_singular_vectors(), (q as usize).pow(4));
        }
    }

    #[test]
    fn invalid_parity_is_rejected() {
        assert!(Form::standard(FormKind::Symplectic, 5, 2, None).is_err());
        assert!(Form::standard(FormKind::Quadratic, 5, 2, Some(Sign::Circle)).is_err());
        assert!(Form::standard(FormKind::Quadratic, 5, 3, Some(Sign::Plus)).is_err());
        assert!(Form::standard(FormKind::Hermitian, 3, 8, None).is_err());
    }

    #[test]
    fn elliptic_reflection_product_matches_block_matrix() {
        let f = Form::standard(FormKind::Quadratic, 4, 2, Some(Sign::Minus)).unwrap();
        let g = f.reflection(&e(4, 0)).unwrap().mul(&f.reflection(&e(4, 1)).unwrap()).unwrap();
        let expected = Matrix::from_rows(
            f.field(),
            &[vec![1, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn reflections_are_involutions_and_transvections_fix_v() {
        let f = Form::standard(FormKind::Quadratic, 4, 3, Some(Sign::Plus)).unwrap();
        let v = [1, 1, 0, 0];
        let r = f.reflection(&v).unwrap();
        assert!(r.mul(&r).unwrap().is_identity());
        assert_eq!(f.reflection(&e(4, 0)), Err(GfError::SingularVector));
        let sp = Form::standard(FormKind::Symplectic, 4, 5, None).unwrap();
        let t = sp.transvection(&[1, 2, 0, 3], 4).unwrap();
        assert_eq!(t.apply(&[1, 2, 0, 3]).unwrap(), vec![1, 2, 0, 3]);
        assert_eq!(t.det().unwrap(), 1);
    }

    #[test]
    fn perp_of_a_point() {
        let f = Form::standard(FormKind::Quadratic, 5, 3, Some(Sign::Circle)).unwrap();
        let u = Matrix::from_rows(f.field(), &[vec![1, 0, 0, 0, 0]]).unwrap();
        let p = f.perp(&u);
        assert_eq!(p.rows(), 4);
        for i in 0..p.rows() {
            assert_eq!(f.polar(p.row(i), u.row(0)).unwrap(), 0);
        }
    }
}
