use std::fmt;

use super::{Field, GfError};

/// A dense matrix over one of the supported fields.
///
/// Vectors are rows and matrices act on the right: `v ↦ v·M`.
#[derive(Clone)]
pub struct Matrix {
    field: &'static Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn zeros(field: &'static Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &'static Field, d: usize) -> Self {
        let mut m = Self::zeros(field, d, d);
        for i in 0..d {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &'static Field, rows: &[Vec<u8>]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(GfError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            if let Some(&x) = r.iter().find(|&&x| x as u32 >= field.q()) {
                return Err(GfError::NotAFieldElement { value: x, q: field.q() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_flat(field: &'static Field, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// `I + λ E_{ij}`.
    pub fn elementary(field: &'static Field, d: usize, i: usize, j: usize, lambda: u8) -> Self {
        let mut m = Self::identity(field, d);
        m.set(i, j, field.add(m.get(i, j), lambda));
        m
    }

    pub fn diagonal(field: &'static Field, entries: &[u8]) -> Self {
        let mut m = Self::zeros(field, entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, GfError> {
        if self.cols != other.rows {
            return Err(GfError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u8]) -> Result<Vec<u8>, GfError> {
        if v.len() != self.rows {
            return Err(GfError::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![0u8; self.cols];
        self.apply_into(v, &mut out);
        Ok(out)
    }

    #[inline]
    pub(crate) fn apply_into(&self, v: &[u8], out: &mut [u8]) {
        let f = self.field;
        out.iter_mut().for_each(|x| *x = 0);
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = self.row(k);
            for (o, &m) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(a, m));
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Applies a field map entrywise.
    pub fn map(&self, g: impl Fn(u8) -> u8) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| g(x)).collect(),
        }
    }

    /// Reduced row echelon form with zero rows removed; pivots are 1 and rows
    /// are ordered by pivot column.
    pub fn rref(&self) -> Matrix {
        let f = self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    pub fn det(&self) -> Result<u8, GfError> {
        if self.rows != self.cols {
            return Err(GfError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u8;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, GfError> {
        if self.rows != self.cols {
            return Err(GfError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.rref();
        if r.rows < n || (0..n).any(|i| r.get(i, i) != 1) {
            return Err(GfError::Singular);
        }
        let mut out = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.rows;
        d == self.cols
            && (0..d).all(|i| (0..d).all(|j| if i == j { self.get(i, i) == self.get(0, 0) } else { self.get(i, j) == 0 }))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<GF({})>", self.field.q())?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: u32, rows: &[&[u8]]) -> Matrix {
        let f = Field::get(q).unwrap();
        Matrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.det().unwrap(), 3); // 4 - 6 = -2 = 3
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(m(2, &[&[1, 1], &[1, 1]]).inverse(), Err(GfError::Singular));
    }

    #[test]
    fn rref_normalizes() {
        let a = m(3, &[&[0, 2, 1], &[0, 1, 2], &[2, 0, 0]]);
        let r = a.rref();
        assert_eq!(r, m(3, &[&[1, 0, 0], &[0, 1, 2]]));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn row_action_is_a_right_action() {
        let a = m(7, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let b = m(7, &[&[2, 0, 1], &[1, 1, 0], &[0, 5, 1]]);
        let v = [3u8, 6, 1];
        let lhs = a.mul(&b).unwrap().apply(&v).unwrap();
        let rhs = b.apply(&a.apply(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
