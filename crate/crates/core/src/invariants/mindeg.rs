//! Minimal degree: the least support of a nonidentity element.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::InvariantError;
use crate::perm::{orbits_of, Level};
use crate::{PermGroup, Permutation, StabilizerChain};

/// Default largest group order for which elements are enumerated.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000_000;

/// Default number of distinct pointwise stabilizers the fixed-point search may expand.
pub const DEFAULT_STABILIZER_BUDGET: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuMethod {
    /// Every element of the group was visited.
    FullEnumeration,
    /// Every element of a point stabilizer of a transitive group was visited.
    PointStabilizer,
    /// Search over pointwise stabilizers of point sets.
    FixedPointSearch,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalDegree {
    pub mu: usize,
    /// A prime-order element of support `mu`.
    #[serde(skip)]
    pub witness: Permutation,
    pub method: MuMethod,
}

#[derive(Clone, Debug)]
pub struct MuOptions {
    pub order_cap: u64,
    /// Enumerate only a point stabilizer when the group is transitive.
    pub reduce_transitive: bool,
}

impl Default for MuOptions {
    fn default() -> Self {
        Self {
            order_cap: DEFAULT_ORDER_CAP,
            reduce_transitive: true,
        }
    }
}

/// Exact minimal degree by enumerating the transversal product tree of a
/// stabilizer chain. The witness is the first element in enumeration order
/// with the most fixed points, raised to a power of prime order.
pub fn minimal_degree_exact(group: &PermGroup, opts: &MuOptions) -> Result<MinimalDegree, InvariantError> {
    if group.is_trivial() {
        return Err(InvariantError::TrivialGroup);
    }
    let order = group.order();
    if order > BigUint::from(opts.order_cap) {
        return Err(InvariantError::OrderCapExceeded { order, cap: opts.order_cap });
    }
    let n = group.degree();
    let chain = group.chain();
    let (target, method) = if opts.reduce_transitive && group.is_transitive() {
        // A fixed point can be moved to the first base point by conjugation,
        // so the maximum over the stabilizer is the maximum over the group.
        let stab = chain.tail(1);
        if stab.is_trivial() {
            let g = chain.strong_generators().into_iter().find(|g| !g.is_identity()).expect("nontrivial group");
            return Ok(MinimalDegree {
                mu: n,
                witness: g.prime_order_power(),
                method: MuMethod::PointStabilizer,
            });
        }
        (stab, MuMethod::PointStabilizer)
    } else {
        (chain.clone(), MuMethod::FullEnumeration)
    };
    let (fix, path) = max_fix_enumeration(&target);
    let witness = element_at(&target, &path).prime_order_power();
    debug_assert_eq!(witness.fix_count(), fix);
    Ok(MinimalDegree {
        mu: n - fix,
        witness,
        method,
    })
}

/// Points fixed by every element of each level's group, plus all points at the end.
fn level_fixed_sets(chain: &StabilizerChain) -> Vec<Vec<bool>> {
    let n = chain.degree();
    let mut out: Vec<Vec<bool>> = chain
        .levels()
        .iter()
        .map(|l| (0..n).map(|x| l.generators().iter().all(|g| g.apply(x) == x)).collect())
        .collect();
    out.push(vec![true; n]);
    out
}

/// Largest number of elements in the precomputed tail of the product tree.
const TAIL_LIMIT: usize = 512;

/// The elements of the group of the last few levels, in enumeration order,
/// restricted to the points that group moves.
struct Tail {
    start: usize,
    moved: Vec<usize>,
    paths: Vec<Vec<u32>>,
    /// `images[i * moved.len() + j]` is the image of `moved[j]`.
    images: Vec<u32>,
}

impl Tail {
    fn new(levels: &[Level], fixed: &[Vec<bool>], n: usize) -> Tail {
        let k = levels.len();
        let mut start = k - 1;
        let mut size = levels[k - 1].orbit_len();
        while start > 0 && size * levels[start - 1].orbit_len() <= TAIL_LIMIT {
            start -= 1;
            size *= levels[start].orbit_len();
        }
        let moved: Vec<usize> = (0..n).filter(|&x| !fixed[start][x]).collect();
        let mut tail = Tail {
            start,
            moved,
            paths: Vec::with_capacity(size),
            images: Vec::new(),
        };
        let identity: Vec<u32> = (0..n as u32).collect();
        tail.collect(levels, start, &identity, &mut Vec::new());
        tail
    }

    fn collect(&mut self, levels: &[Level], depth: usize, prefix: &[u32], path: &mut Vec<u32>) {
        if depth == levels.len() {
            self.paths.push(path.clone());
            self.images.extend(self.moved.iter().map(|&x| prefix[x]));
            return;
        }
        for (j, u) in levels[depth].transversal().iter().enumerate() {
            let next = compose_into(prefix, u.images());
            path.push(j as u32);
            self.collect(levels, depth + 1, &next, path);
            path.pop();
        }
    }
}

/// Images of the element applying `u` and then the partial product `prefix`.
fn compose_into(prefix: &[u32], u: &[u32]) -> Vec<u32> {
    u.iter().map(|&y| prefix[y as usize]).collect()
}

struct Walk<'a> {
    levels: &'a [Level],
    fixed: &'a [Vec<bool>],
    tail: Tail,
    n: usize,
    global: &'a AtomicUsize,
}

#[derive(Clone, Debug)]
struct Best {
    fix: usize,
    path: Vec<u32>,
}

impl Walk<'_> {
    /// Depth-first walk below the partial product `prefix` of levels `0..depth`.
    /// `prefix[x]` is the image of `x` under that partial product.
    fn descend(&self, depth: usize, prefix: &[u32], path: &mut Vec<u32>, best: &mut Option<Best>) {
        // Points fixed by the remaining group already have their final image.
        let fixed = &self.fixed[depth];
        let mut final_fixed = 0;
        let mut open = 0;
        for x in 0..self.n {
            if fixed[x] {
                final_fixed += (prefix[x] as usize == x) as usize;
            } else {
                open += 1;
            }
        }
        let bound = final_fixed + open;
        let local = best.as_ref().map(|b| b.fix);
        if local.is_some_and(|b| bound <= b) || bound < self.global.load(Ordering::Relaxed) {
            return;
        }
        if depth == self.tail.start {
            self.leaves(final_fixed, prefix, path, best);
            return;
        }
        for (j, u) in self.levels[depth].transversal().iter().enumerate() {
            let next = compose_into(prefix, u.images());
            path.push(j as u32);
            self.descend(depth + 1, &next, path, best);
            path.pop();
        }
    }

    fn leaves(&self, final_fixed: usize, prefix: &[u32], path: &mut Vec<u32>, best: &mut Option<Best>) {
        let tail = &self.tail;
        let m = tail.moved.len();
        let at_identity = path.iter().all(|&i| i == 0);
        for i in 0..tail.paths.len() {
            let w = &tail.images[i * m..(i + 1) * m];
            if i == 0 && at_identity {
                continue;
            }
            // Stop counting once the element can no longer beat the current best.
            let need = best.as_ref().map_or(0, |b| b.fix + 1);
            let mut slack = (final_fixed + m).saturating_sub(need);
            let mut fix = final_fixed;
            let mut beaten = final_fixed + m >= need;
            for (&x, &y) in tail.moved.iter().zip(w) {
                if prefix[y as usize] as usize == x {
                    fix += 1;
                } else if slack == 0 {
                    beaten = false;
                    break;
                } else {
                    slack -= 1;
                }
            }
            if beaten && fix >= need {
                let mut full = path.clone();
                full.extend(&tail.paths[i]);
                *best = Some(Best { fix, path: full });
                self.global.fetch_max(fix, Ordering::Relaxed);
            }
        }
    }
}

/// Maximum number of fixed points over the nonidentity elements of the
/// chain's group, with the transversal indices of the first element reaching it.
fn max_fix_enumeration(chain: &StabilizerChain) -> (usize, Vec<u32>) {
    let n = chain.degree();
    let levels = chain.levels();
    assert!(!levels.is_empty(), "nontrivial chain");
    let fixed = level_fixed_sets(chain);
    let global = AtomicUsize::new(0);
    let walk = Walk {
        levels,
        fixed: &fixed,
        tail: Tail::new(levels, &fixed, n),
        n,
        global: &global,
    };
    // Tasks are the choices at the first (up to two) levels above the tail, in
    // enumeration order; the reduction keeps the earliest task among those with
    // the most fixed points, so the result does not depend on scheduling.
    let split = walk.tail.start.min(2);
    let widths: Vec<usize> = levels[..split].iter().map(|l| l.orbit_len()).collect();
    let tasks: usize = widths.iter().product();
    let results: Vec<Option<Best>> = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let mut path = vec![0u32; split];
            let mut rest = t;
            for (slot, &w) in path.iter_mut().zip(&widths).rev() {
                *slot = (rest % w) as u32;
                rest /= w;
            }
            let mut prefix: Vec<u32> = (0..n as u32).collect();
            for (level, &j) in levels.iter().zip(&path) {
                prefix = compose_into(&prefix, level.transversal()[j as usize].images());
            }
            let mut best = None;
            walk.descend(split, &prefix, &mut path, &mut best);
            best
        })
        .collect();
    let best = results
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.fix > a.fix { b } else { a })
        .expect("nontrivial group");
    (best.fix, best.path)
}

/// The element `u_{k-1} ⋯ u_0` (applied left to right) for transversal indices `path`.
fn element_at(chain: &StabilizerChain, path: &[u32]) -> Permutation {
    let n = chain.degree();
    let mut g = Permutation::identity(n);
    for (level, &j) in chain.levels().iter().zip(path) {
        g = level.transversal()[j as usize].then(&g);
    }
    g
}

/// Exact minimal degree by a search over pointwise stabilizers.
///
/// The maximum number of fixed points of a nonidentity element equals the
/// maximum of `|fix(K)|` over nontrivial pointwise stabilizers `K` of point
/// sets, and such `K` are reached by fixing one point of a nontrivial orbit at
/// a time. Independent of the enumeration route; usable past the order cap.
pub fn minimal_degree_by_stabilizers(group: &PermGroup, budget: u64) -> Result<MinimalDegree, InvariantError> {
    if group.is_trivial() {
        return Err(InvariantError::TrivialGroup);
    }
    let n = group.degree();
    let mut search = StabilizerSearch {
        seen: HashSet::new(),
        best: None,
        budget,
    };
    search.run(group.chain())?;
    let best = search.best;
    let (fix, witness) = best.expect("nontrivial group");
    Ok(MinimalDegree {
        mu: n - fix,
        witness: witness.prime_order_power(),
        method: MuMethod::FixedPointSearch,
    })
}

struct StabilizerSearch {
    /// Fixed-point sets already expanded.
    seen: HashSet<Vec<usize>>,
    best: Option<(usize, Permutation)>,
    budget: u64,
}

impl StabilizerSearch {
    fn run(&mut self, chain: &StabilizerChain) -> Result<(), InvariantError> {
        let n = chain.degree();
        let gens = chain.strong_generators();
        let fixed: Vec<usize> = (0..n).filter(|&x| gens.iter().all(|g| g.apply(x) == x)).collect();
        if self.best.as_ref().is_none_or(|(f, _)| fixed.len() > *f) {
            let g = gens.iter().find(|g| !g.is_identity()).expect("nontrivial stabilizer");
            self.best = Some((fixed.len(), g.clone()));
        }
        if !self.seen.insert(fixed) {
            return Ok(());
        }
        for orbit in orbits_of(n, &gens).into_iter().filter(|o| o.len() > 1) {
            if self.seen.len() as u64 > self.budget {
                return Err(InvariantError::BudgetExceeded { budget: self.budget });
            }
            let stab = chain.stabilizer(orbit[0]);
            if !stab.is_trivial() {
                self.run(&stab)?;
            }
        }
        Ok(())
    }
}
