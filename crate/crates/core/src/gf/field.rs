use std::sync::OnceLock;

use super::GfError;

/// Field sizes with a pinned reduction polynomial.
pub const SUPPORTED_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

const POLYNOMIAL_TABLE: &str = include_str!("../../data/reduction_polynomials.txt");

/// A finite field GF(p^f) with full lookup tables.
///
/// Elements are `u8` values `0..q`; see `data/reduction_polynomials.txt` for
/// the encoding.
#[derive(Debug)]
pub struct Field {
    q: u32,
    p: u32,
    f: u32,
    reduction: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frobenius: Vec<u8>,
    primitive: u8,
}

fn parse_table() -> Result<Vec<(u32, u32, u32, Vec<u32>)>, GfError> {
    let mut out = Vec::new();
    for (lineno, line) in POLYNOMIAL_TABLE.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|e| GfError::BadTable(format!("line {}: {e}", lineno + 1)))?;
        if nums.len() < 4 || nums.len() != 3 + nums[2] as usize {
            return Err(GfError::BadTable(format!("line {}: wrong field count", lineno + 1)));
        }
        out.push((nums[0], nums[1], nums[2], nums[3..].to_vec()));
    }
    Ok(out)
}

impl Field {
    /// The shared instance for `q`.
    pub fn get(q: u32) -> Result<&'static Field, GfError> {
        static FIELDS: [OnceLock<Result<Field, GfError>>; 7] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        let idx = SUPPORTED_Q
            .iter()
            .position(|&s| s == q)
            .ok_or(GfError::UnsupportedField(q))?;
        FIELDS[idx]
            .get_or_init(|| Field::build(q))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn build(q: u32) -> Result<Field, GfError> {
        let (_, p, f, reduction) = parse_table()?
            .into_iter()
            .find(|row| row.0 == q)
            .ok_or(GfError::UnsupportedField(q))?;
        if p.pow(f) != q || reduction.iter().any(|&c| c >= p) {
            return Err(GfError::BadTable(format!("inconsistent row for q = {q}")));
        }
        let qs = q as usize;
        let digits = |x: usize| -> Vec<u32> {
            let mut d = vec![0u32; f as usize];
            let mut x = x as u32;
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[u32]| -> u8 { d.iter().rev().fold(0u32, |acc, &c| acc * p + c) as u8 };
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&sum);
                // Schoolbook product, then reduce x^k for k >= f using the monic polynomial.
                let mut prod = vec![0u32; 2 * f as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (f as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &r) in reduction.iter().enumerate() {
                        let idx = k - f as usize + i;
                        prod[idx] = (prod[idx] + (p - c) * r) % p;
                    }
                }
                mul[a * qs + b] = encode(&prod[..f as usize]);
            }
        }
        let mut field = Field {
            q,
            p,
            f,
            reduction,
            add,
            mul,
            neg: vec![0; qs],
            inv: vec![0; qs],
            frobenius: vec![0; qs],
            primitive: 0,
        };
        for a in 0..qs {
            field.neg[a] = (0..qs).find(|&b| field.add(a as u8, b as u8) == 0).ok_or_else(|| {
                GfError::AxiomViolation(format!("no additive inverse for {a} in GF({q})"))
            })? as u8;
            if a != 0 {
                field.inv[a] = (1..qs).find(|&b| field.mul(a as u8, b as u8) == 1).ok_or_else(|| {
                    GfError::AxiomViolation(format!("no multiplicative inverse for {a} in GF({q})"))
                })? as u8;
            }
            field.frobenius[a] = field.pow(a as u8, p as u64);
        }
        field.primitive = (1..qs as u8)
            .find(|&g| field.multiplicative_order(g) == qs as u64 - 1)
            .ok_or_else(|| GfError::AxiomViolation(format!("GF({q}) has no primitive element")))?;
        field.check_axioms()?;
        Ok(field)
    }

    /// Exhaustive check of the field axioms over all pairs and triples.
    pub fn check_axioms(&self) -> Result<(), GfError> {
        let q = self.q as u8;
        let fail = |what: &str, a: u8, b: u8, c: u8| {
            Err(GfError::AxiomViolation(format!(
                "{what} fails in GF({}) at ({a}, {b}, {c})",
                self.q
            )))
        };
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identity", a, 0, 1);
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity", a, b, 0);
                }
                if a != 0 && b != 0 && self.mul(a, b) == 0 {
                    return fail("no zero divisors", a, b, 0);
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", a, b, c);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", a, b, c);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity", a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    /// Coefficients `c_0..c_{f-1}` of the monic reduction polynomial.
    pub fn reduction_polynomial(&self) -> &[u32] {
        &self.reduction
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8, GfError> {
        if a == 0 {
            Err(GfError::ZeroInverse)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a ↦ a^p`.
    #[inline]
    pub fn frobenius(&self, a: u8) -> u8 {
        self.frobenius[a as usize]
    }

    /// The involution `a ↦ a^√q` of a field of square order.
    pub fn conjugate(&self, a: u8) -> Result<u8, GfError> {
        if self.f % 2 != 0 {
            return Err(GfError::NotASquareField(self.q));
        }
        let mut x = a;
        for _ in 0..self.f / 2 {
            x = self.frobenius(x);
        }
        Ok(x)
    }

    /// `√q` for a field of square order.
    pub fn subfield_order(&self) -> Result<u32, GfError> {
        if self.f % 2 != 0 {
            return Err(GfError::NotASquareField(self.q));
        }
        Ok(self.p.pow(self.f / 2))
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> u8 {
        self.primitive
    }

    pub fn multiplicative_order(&self, a: u8) -> u64 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_square(&self, a: u8) -> bool {
        a == 0 || self.p == 2 || self.pow(a, (self.q as u64 - 1) / 2) == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// `ω^0, …, ω^{f-1}` for the primitive element `ω`: a basis over the prime field.
    pub fn additive_basis(&self) -> Vec<u8> {
        (0..self.f as u64).map(|i| self.pow(self.primitive, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_supported_fields_build() {
        for q in SUPPORTED_Q {
            let f = Field::get(q).unwrap();
            assert_eq!(f.q(), q);
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
        assert!(matches!(Field::get(6), Err(GfError::UnsupportedField(6))));
        assert!(matches!(Field::get(16), Err(GfError::UnsupportedField(16))));
    }

    #[test]
    fn small_facts() {
        let f2 = Field::get(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f4 = Field::get(4).unwrap();
        let x = f4.primitive_element();
        assert_eq!(f4.mul(x, f4.mul(x, x)), 1);
        assert_eq!(f4.inv(0), Err(GfError::ZeroInverse));
    }

    #[test]
    fn gf9_conjugation_is_an_involutive_automorphism() {
        let f = Field::get(9).unwrap();
        for a in f.elements() {
            let c = f.conjugate(a).unwrap();
            assert_eq!(f.conjugate(c).unwrap(), a);
            for b in f.elements() {
                assert_eq!(f.conjugate(f.mul(a, b)).unwrap(), f.mul(c, f.conjugate(b).unwrap()));
            }
        }
        assert!(Field::get(8).unwrap().conjugate(1).is_err());
    }

    #[test]
    fn squares() {
        let f = Field::get(7).unwrap();
        let squares: Vec<u8> = f.elements().filter(|&a| f.is_square(a)).collect();
        assert_eq!(squares, vec![0, 1, 2, 4]);
    }
}
