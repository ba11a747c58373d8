use num_bigint::BigUint;
use num_traits::One;

use super::Permutation;

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain: a base point, the generators of the
/// current stabilizer, and explicit transversals for the basic orbit.
#[derive(Clone, Debug)]
pub struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    position: Vec<u32>,
    transversal: Vec<Permutation>,
    inverse_transversal: Vec<Permutation>,
    // Number of generators whose Schreier generator at this orbit point has been sifted.
    checked: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut position = vec![NONE; degree];
        position[base_point] = 0;
        Self {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point as u32],
            position,
            transversal: vec![Permutation::identity(degree)],
            inverse_transversal: vec![Permutation::identity(degree)],
            checked: vec![0],
        }
    }

    fn push_point(&mut self, point: usize, rep: Permutation) {
        self.position[point] = self.orbit.len() as u32;
        self.orbit.push(point as u32);
        self.inverse_transversal.push(rep.inverse());
        self.transversal.push(rep);
        self.checked.push(0);
    }

    fn add_generator(&mut self, g: Permutation) {
        let old_len = self.orbit.len();
        for j in 0..old_len {
            let img = g.apply(self.orbit[j] as usize);
            if self.position[img] == NONE {
                let rep = self.transversal[j].then(&g);
                self.push_point(img, rep);
            }
        }
        self.generators.push(g);
        let mut idx = old_len;
        while idx < self.orbit.len() {
            let beta = self.orbit[idx] as usize;
            for k in 0..self.generators.len() {
                let img = self.generators[k].apply(beta);
                if self.position[img] == NONE {
                    let rep = self.transversal[idx].then(&self.generators[k]);
                    self.push_point(img, rep);
                }
            }
            idx += 1;
        }
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Basic orbit in discovery order; the base point comes first.
    pub fn orbit(&self) -> impl Iterator<Item = usize> + '_ {
        self.orbit.iter().map(|&x| x as usize)
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn contains_point(&self, point: usize) -> bool {
        self.position[point] != NONE
    }

    /// Transversal elements aligned with [`Level::orbit`]: entry `j` maps the
    /// base point to the `j`-th orbit point.
    pub fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }

    /// Element mapping the base point to `point`, if it lies in the basic orbit.
    pub fn transversal_element(&self, point: usize) -> Option<&Permutation> {
        match self.position[point] {
            NONE => None,
            p => Some(&self.transversal[p as usize]),
        }
    }

    fn conjugate(&self, c: &Permutation) -> Level {
        let degree = self.position.len();
        let mut position = vec![NONE; degree];
        let orbit: Vec<u32> = self.orbit.iter().map(|&x| c.images()[x as usize]).collect();
        for (j, &x) in orbit.iter().enumerate() {
            position[x as usize] = j as u32;
        }
        let conj = |p: &Permutation| p.conjugate(c);
        Level {
            base_point: c.apply(self.base_point),
            generators: self.generators.iter().map(conj).collect(),
            orbit,
            position,
            transversal: self.transversal.iter().map(conj).collect(),
            inverse_transversal: self.inverse_transversal.iter().map(conj).collect(),
            checked: self.checked.clone(),
        }
    }
}

/// A base and strong generating set with explicit transversals.
///
/// Construction is deterministic: the same generators and initial base always
/// give the same chain.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            levels: Vec::new(),
        }
    }

    /// Deterministic Schreier–Sims.
    ///
    /// Points of `initial_base` become the first base points, in order, even
    /// when their level turns out trivial. With `known_order` the construction
    /// stops as soon as the chain reaches that order; the caller guarantees that
    /// it is an upper bound for the generated group.
    pub fn schreier_sims(
        degree: usize,
        generators: &[Permutation],
        initial_base: &[usize],
        known_order: Option<&BigUint>,
    ) -> Self {
        let mut chain = Self::trivial(degree);
        for &b in initial_base {
            if !chain.levels.iter().any(|l| l.base_point == b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        let mut deepest = 0;
        for g in generators {
            if let Some(d) = chain.insert_generator(g) {
                deepest = deepest.max(d);
            }
        }
        if !chain.levels.is_empty() {
            chain.complete(deepest.min(chain.levels.len() - 1), known_order);
        }
        chain.trim_trailing_trivial(initial_base.len());
        chain
    }

    fn trim_trailing_trivial(&mut self, keep: usize) {
        while self.levels.len() > keep
            && self.levels.last().is_some_and(|l| l.orbit.len() == 1)
        {
            self.levels.pop();
        }
    }

    /// Adds `g` to every level whose stabilizer contains it, extending the base
    /// if `g` fixes all base points. Returns the deepest level touched.
    fn insert_generator(&mut self, g: &Permutation) -> Option<usize> {
        if g.is_identity() {
            return None;
        }
        if self.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
            let point = g.first_moved_point().expect("nonidentity");
            self.levels.push(Level::new(self.degree, point));
        }
        let mut deepest = 0;
        for i in 0..self.levels.len() {
            if i > 0 {
                let b = self.levels[i - 1].base_point;
                if g.apply(b) != b {
                    break;
                }
            }
            self.levels[i].add_generator(g.clone());
            deepest = i;
        }
        Some(deepest)
    }

    /// Adds a generator to a complete chain and restores completeness.
    /// Returns `false` if `g` was already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        if self.contains(g) {
            return false;
        }
        let deepest = self.insert_generator(g).expect("nonidentity");
        self.complete(deepest, None);
        true
    }

    fn complete(&mut self, start: usize, known_order: Option<&BigUint>) {
        if let Some(k) = known_order {
            if &self.order() == k {
                return;
            }
        }
        let n = self.degree;
        let mut buf = vec![0u32; n];
        let mut i = start as isize;
        'outer: while i >= 0 {
            let l = i as usize;
            let mut j = 0;
            while j < self.levels[l].orbit.len() {
                while (self.levels[l].checked[j] as usize) < self.levels[l].generators.len() {
                    let level = &self.levels[l];
                    let k = level.checked[j] as usize;
                    let beta = level.orbit[j] as usize;
                    let s = &level.generators[k];
                    let img = s.apply(beta);
                    let pos = level.position[img] as usize;
                    let u = level.transversal[j].images();
                    let uinv = level.inverse_transversal[pos].images();
                    let si = s.images();
                    let mut trivial = true;
                    for x in 0..n {
                        let y = uinv[si[u[x] as usize] as usize];
                        trivial &= y == x as u32;
                        buf[x] = y;
                    }
                    self.levels[l].checked[j] += 1;
                    if trivial {
                        continue;
                    }
                    let h = Permutation::from_raw(buf.clone());
                    let (r, drop) = self.sift_from(h, l + 1);
                    if r.is_identity() {
                        continue;
                    }
                    if drop == self.levels.len() {
                        let point = r.first_moved_point().expect("nonidentity");
                        self.levels.push(Level::new(n, point));
                    }
                    for m in l + 1..=drop {
                        self.levels[m].add_generator(r.clone());
                    }
                    if let Some(k) = known_order {
                        if &self.order() == k {
                            return;
                        }
                    }
                    i = drop as isize;
                    continue 'outer;
                }
                j += 1;
            }
            i -= 1;
        }
    }

    /// Sifts `h` through levels `start..`; returns the residue and the level
    /// at which sifting stopped (`levels().len()` if it went through).
    pub fn sift_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        let n = self.degree;
        let mut scratch = vec![0u32; n];
        for l in start..self.levels.len() {
            let level = &self.levels[l];
            let img = h.apply(level.base_point);
            let pos = level.position[img];
            if pos == NONE {
                return (h, l);
            }
            if pos != 0 {
                let uinv = level.inverse_transversal[pos as usize].images();
                let hi = h.images();
                for x in 0..n {
                    scratch[x] = uinv[hi[x] as usize];
                }
                h = Permutation::from_raw(std::mem::take(&mut scratch));
                scratch = vec![0u32; n];
            }
        }
        (h, self.levels.len())
    }

    pub fn sift(&self, h: &Permutation) -> (Permutation, usize) {
        self.sift_from(h.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    /// Union of the level generators, without duplicates, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for l in &self.levels {
            for g in &l.generators {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Chain of the pointwise stabilizer of the first `from` base points.
    pub fn tail(&self, from: usize) -> StabilizerChain {
        let mut levels = self.levels[from.min(self.levels.len())..].to_vec();
        while levels.last().is_some_and(|l| l.orbit.len() == 1) {
            levels.pop();
        }
        StabilizerChain {
            degree: self.degree,
            levels,
        }
    }

    /// Chain of `c⁻¹ G c`, whose base is the image of this base under `c`.
    pub fn conjugate(&self, c: &Permutation) -> StabilizerChain {
        StabilizerChain {
            degree: self.degree,
            levels: self.levels.iter().map(|l| l.conjugate(c)).collect(),
        }
    }

    /// Chain for the stabilizer of `point`, with `point` dropped from the base.
    pub fn stabilizer(&self, point: usize) -> StabilizerChain {
        let Some(first) = self.levels.first() else {
            return self.clone();
        };
        if first.base_point == point {
            return self.tail(1);
        }
        if let Some(u) = first.transversal_element(point) {
            return self.tail(1).conjugate(u);
        }
        let gens = self.strong_generators();
        if gens.iter().all(|g| g.apply(point) == point) {
            return self.clone();
        }
        let order = self.order();
        Self::schreier_sims(self.degree, &gens, &[point], Some(&order)).tail(1)
    }

    /// Rebuilds the chain with the given initial base, reusing the known order.
    pub fn with_base_prefix(&self, initial_base: &[usize]) -> StabilizerChain {
        let order = self.order();
        Self::schreier_sims(self.degree, &self.strong_generators(), initial_base, Some(&order))
    }

    /// Independent completeness check: every Schreier generator at every level
    /// sifts to the identity through the levels below it.
    pub fn verify(&self) -> bool {
        for (l, level) in self.levels.iter().enumerate() {
            for g in &level.generators {
                for b in &self.levels[..l] {
                    if g.apply(b.base_point) != b.base_point {
                        return false;
                    }
                }
            }
            for (j, &beta) in level.orbit.iter().enumerate() {
                let u = &level.transversal[j];
                if u.apply(level.base_point) != beta as usize {
                    return false;
                }
                for s in &level.generators {
                    let img = s.apply(beta as usize);
                    let pos = level.position[img];
                    if pos == NONE {
                        return false;
                    }
                    let h = u.then(s).then(&level.inverse_transversal[pos as usize]);
                    if !self.sift_from(h, l + 1).0.is_identity() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn symmetric_four() {
        let gens = [cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        let chain = StabilizerChain::schreier_sims(4, &gens, &[], None);
        assert_eq!(chain.order(), BigUint::from(24u32));
        assert!(chain.verify());
        assert!(chain.contains(&cyc(4, &[&[1, 3]])));
    }

    #[test]
    fn initial_base_is_respected() {
        let gens = [cyc(5, &[&[0, 1, 2]])];
        let chain = StabilizerChain::schreier_sims(5, &gens, &[4, 2], None);
        assert_eq!(chain.base()[..2], [4, 2]);
        assert_eq!(chain.order(), BigUint::from(3u32));
    }

    #[test]
    fn stabilizer_by_conjugation_matches_rebuild() {
        let gens = [cyc(6, &[&[0, 1]]), cyc(6, &[&[0, 1, 2, 3, 4, 5]])];
        let chain = StabilizerChain::schreier_sims(6, &gens, &[], None);
        for p in 0..6 {
            let st = chain.stabilizer(p);
            assert_eq!(st.order(), BigUint::from(120u32));
            assert!(st.verify());
            for g in st.strong_generators() {
                assert_eq!(g.apply(p), p);
            }
        }
    }

    #[test]
    fn extend_grows_group() {
        let mut chain = StabilizerChain::schreier_sims(4, &[cyc(4, &[&[0, 1, 2]])], &[], None);
        assert!(chain.extend(&cyc(4, &[&[0, 3]])));
        assert_eq!(chain.order(), BigUint::from(24u32));
        assert!(!chain.extend(&cyc(4, &[&[1, 2]])));
    }

    #[test]
    fn known_order_stops_early_with_correct_group() {
        let gens = [cyc(7, &[&[0, 1]]), cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]])];
        let full = StabilizerChain::schreier_sims(7, &gens, &[], None);
        let quick = StabilizerChain::schreier_sims(7, &gens, &[], Some(&full.order()));
        assert_eq!(quick.order(), BigUint::from(5040u32));
        assert!(quick.contains(&cyc(7, &[&[2, 5]])));
    }
}
