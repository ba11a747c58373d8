use std::collections::VecDeque;
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::{minimal_block, PermError, Permutation, StabilizerChain};

/// A permutation group given by generators, with a lazily built stabilizer chain.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        Self {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut kept: Vec<Permutation> = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_identity() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Self {
            degree,
            generators: kept,
            chain: OnceLock::new(),
        })
    }

    /// Like [`PermGroup::new`], but the chain is built with `bound` as a stopping
    /// order. `bound` must be at least the order of the generated group and is
    /// normally its exact order.
    pub fn with_order_bound(
        degree: usize,
        generators: Vec<Permutation>,
        bound: &BigUint,
    ) -> Result<Self, PermError> {
        let g = Self::new(degree, generators)?;
        let chain = StabilizerChain::schreier_sims(degree, &g.generators, &[], Some(bound));
        let _ = g.chain.set(chain);
        Ok(g)
    }

    pub fn from_chain(chain: StabilizerChain) -> Self {
        Self {
            degree: chain.degree(),
            generators: chain.strong_generators(),
            chain: OnceLock::from(chain),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_chain(StabilizerChain::trivial(degree))
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
        }
        Self::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap())
            .collect();
        Self::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::schreier_sims(self.degree, &self.generators, &[], None))
    }

    /// A chain whose base starts with `initial_base`.
    pub fn build_chain(&self, initial_base: &[usize]) -> Result<StabilizerChain, PermError> {
        self.check_points(initial_base)?;
        Ok(self.chain().with_base_prefix(initial_base))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    fn check_points(&self, points: &[usize]) -> Result<(), PermError> {
        match points.iter().find(|&&p| p >= self.degree) {
            Some(&point) => Err(PermError::PointOutOfRange {
                point,
                degree: self.degree,
            }),
            None => Ok(()),
        }
    }

    /// Orbit of `point`, ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, PermError> {
        self.check_points(&[point])?;
        Ok(orbit_of(self.degree, &self.generators, point))
    }

    /// All orbits, each ascending, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit_of(self.degree, &self.generators, 0).len() == self.degree
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup, PermError> {
        let mut distinct: Vec<usize> = Vec::new();
        for &p in points {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let chain = self.build_chain(&distinct)?;
        Ok(PermGroup::from_chain(chain.tail(distinct.len())))
    }

    /// Normal closure in `self` of the group generated by `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> PermGroup {
        let mut chain = StabilizerChain::trivial(self.degree);
        let mut gens = Vec::new();
        let mut queue: VecDeque<Permutation> = elements.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if x.is_identity() || !chain.extend(&x) {
                continue;
            }
            for g in &self.generators {
                queue.push_back(x.conjugate(g));
            }
            gens.push(x);
        }
        PermGroup {
            degree: self.degree,
            generators: gens,
            chain: OnceLock::from(chain),
        }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                comms.push(Permutation::commutator(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.chain().contains(g))
    }

    /// Transitive with no nontrivial block system.
    pub fn is_primitive(&self) -> Result<bool, PermError> {
        if !self.is_transitive() {
            return Err(PermError::Intransitive);
        }
        // One test per suborbit: blocks through 0 are unions of orbits of the stabilizer of 0.
        let stab = self.chain().stabilizer(0).strong_generators();
        Ok(orbits_of(self.degree, &stab)
            .iter()
            .filter(|o| o[0] != 0)
            .all(|o| minimal_block(self.degree, &self.generators, 0, o[0]).len() == self.degree))
    }
}

pub(crate) fn orbit_of(degree: usize, generators: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in generators {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

pub(crate) fn orbits_of(degree: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if seen[p] {
            continue;
        }
        let orbit = orbit_of(degree, generators, p);
        for &x in &orbit {
            seen[x] = true;
        }
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroup::symmetric(4).order(), BigUint::from(24u32));
        let g = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(g.order(), BigUint::from(4u32));
        assert_eq!(PermGroup::trivial(5).order(), BigUint::from(1u32));
        assert_eq!(PermGroup::alternating(6).order(), BigUint::from(360u32));
    }

    #[test]
    fn affine_line_over_three_point_stabilizer() {
        // x ↦ x+1 and x ↦ 2x on GF(3).
        let g = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[1, 2]])]).unwrap();
        assert_eq!(g.pointwise_stabilizer(&[0]).unwrap().order(), BigUint::from(2u32));
    }

    #[test]
    fn derived_subgroup_of_s4_is_a4() {
        let d = PermGroup::symmetric(4).derived_subgroup();
        assert_eq!(d.order(), BigUint::from(12u32));
        assert!(d.is_subgroup_of(&PermGroup::alternating(4)));
    }

    #[test]
    fn primitivity() {
        let c4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert!(!c4.is_primitive().unwrap());
        assert!(PermGroup::symmetric(5).is_primitive().unwrap());
        let intrans = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert_eq!(intrans.is_primitive(), Err(PermError::Intransitive));
    }

    #[test]
    fn orbits_sorted() {
        let g = PermGroup::new(6, vec![cyc(6, &[&[4, 1]]), cyc(6, &[&[2, 5, 3]])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0], vec![1, 4], vec![2, 3, 5]]);
    }

    #[test]
    fn identity_and_duplicate_generators_are_dropped() {
        let t = cyc(3, &[&[0, 1]]);
        let g = PermGroup::new(3, vec![Permutation::identity(3), t.clone(), t]).unwrap();
        assert_eq!(g.generators().len(), 1);
    }

    #[test]
    fn contains_checks_degree() {
        let g = PermGroup::symmetric(3);
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }
}
