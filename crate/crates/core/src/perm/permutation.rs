use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::PermError;

/// A bijection of `{0, …, n-1}` stored as its image list.
///
/// Products are read left to right: `p.then(q)` first applies `p`, then `q`,
/// so `p.then(q).apply(i) == q.apply(p.apply(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images<I>(images: I) -> Result<Self, PermError>
    where
        I: IntoIterator<Item = usize>,
    {
        let images: Vec<usize> = images.into_iter().collect();
        let degree = images.len();
        let mut seen = vec![false; degree];
        for (i, &x) in images.iter().enumerate() {
            if x >= degree {
                return Err(PermError::NotABijection {
                    degree,
                    reason: format!("image {x} of point {i} is out of range"),
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotABijection {
                    degree,
                    reason: format!("point {x} appears twice"),
                });
            }
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2], &[3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(PermError::NotABijection {
                        degree,
                        reason: format!("point {x} occurs in two cycles"),
                    });
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize)).is_ok());
        Self { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `i ↦ other(self(i))`, failing on a degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Same as [`Permutation::compose`] but panics on a degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Moved points, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    pub fn support_size(&self) -> usize {
        self.degree() - self.fix_count()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    pub fn fix_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    /// `self^e` for a nonnegative exponent of any size.
    pub fn pow(&self, e: &BigUint) -> Permutation {
        let mut images = self.images.clone();
        for cycle in self.cycles() {
            let len = cycle.len();
            let shift = (e % BigUint::from(len)).to_usize().unwrap_or(0);
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + shift) % len] as u32;
            }
        }
        Permutation { images }
    }

    /// A power of `self` of prime order. Its fixed points contain those of `self`.
    pub fn prime_order_power(&self) -> Permutation {
        let order = self.order();
        if order.is_one() {
            return self.clone();
        }
        let p = smallest_prime_factor(&order);
        self.pow(&(order / p))
    }

    /// `by⁻¹ · self · by`.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[by.images[i] as usize] = by.images[x as usize];
        }
        Permutation { images }
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }
}

fn smallest_prime_factor(n: &BigUint) -> BigUint {
    let mut p = BigUint::from(2u32);
    while &p * &p <= *n {
        if (n % &p).is_zero() {
            return p;
        }
        p += 1u32;
    }
    n.clone()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// `i ↦ q(p(i))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    p.compose(q)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn support(p: &Permutation) -> Vec<usize> {
    p.support()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.iter().copied()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&perm(&[1, 0, 2]), &perm(&[1, 0, 2])).unwrap(), perm(&[0, 1, 2]));
        let p = perm(&[2, 0, 3, 1]);
        assert_eq!(compose(&Permutation::identity(4), &p).unwrap(), p);
        assert_eq!(compose(&perm(&[1, 2, 0]), &perm(&[1, 2, 0])).unwrap(), perm(&[2, 0, 1]));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = compose(&perm(&[1, 0]), &perm(&[0, 2, 1])).unwrap_err();
        assert_eq!(err, PermError::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&perm(&[1, 2, 0])), perm(&[2, 0, 1]));
        assert!(inverse(&Permutation::identity(5)).is_identity());
        assert_eq!(inverse(&perm(&[1, 0, 3, 2])), perm(&[1, 0, 3, 2]));
    }

    #[test]
    fn support_examples() {
        assert!(support(&Permutation::identity(4)).is_empty());
        assert_eq!(support(&perm(&[1, 0, 2])), vec![0, 1]);
        assert_eq!(support(&perm(&[1, 2, 0, 4, 3])), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images([0, 0, 1]).is_err());
        assert!(Permutation::from_images([0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn cycles_and_display() {
        let p = Permutation::from_cycles(6, &[&[3, 5], &[0, 2, 1]]).unwrap();
        assert_eq!(p.to_string(), "(0 2 1)(3 5)");
        assert_eq!(p.order(), BigUint::from(6u32));
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn prime_order_power_keeps_fixed_points() {
        let p = Permutation::from_cycles(7, &[&[0, 1, 2, 3, 4, 5], &[]]).unwrap();
        let r = p.prime_order_power();
        assert_eq!(r.order(), BigUint::from(2u32));
        assert_eq!(r, Permutation::from_cycles(7, &[&[0, 3], &[1, 4], &[2, 5]]).unwrap());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        assert_eq!(x.conjugate(&c), Permutation::from_cycles(4, &[&[0, 2]]).unwrap());
    }
}
