use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use primbase_core::gf::{Field, Matrix, SUPPORTED_Q};
use primbase_core::invariants::{
    base_lower_bound, base_size_exact, base_size_greedy, is_irredundant_base, minimal_degree_by_stabilizers,
    minimal_degree_exact, MuOptions,
};
use primbase_core::{PermGroup, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group(max_n: usize) -> impl Strategy<Value = PermGroup> {
    (2..=max_n).prop_flat_map(|n| prop::collection::vec(perm(n), 1..=3).prop_map(move |g| PermGroup::new(n, g).unwrap()))
}

/// All elements, by closing the generators under multiplication.
fn elements(g: &PermGroup) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::from([Permutation::identity(g.degree())]);
    let mut queue: Vec<Permutation> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn brute_mu(els: &[Permutation]) -> Option<usize> {
    els.iter().filter(|x| !x.is_identity()).map(|x| x.support_size()).min()
}

fn brute_base_size(n: usize, els: &[Permutation]) -> usize {
    let nontrivial: Vec<&Permutation> = els.iter().filter(|x| !x.is_identity()).collect();
    (0..=n)
        .find(|&b| {
            subsets(n, b)
                .into_iter()
                .any(|s| nontrivial.iter().all(|x| s.iter().any(|&p| x.apply(p) != p)))
        })
        .unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in perm(9), b in perm(9), c in perm(9)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn prime_power_keeps_fixed_points(a in perm(10)) {
        let p = a.prime_order_power();
        let fixed: HashSet<usize> = a.fixed_points().into_iter().collect();
        prop_assert!(fixed.iter().all(|&x| p.apply(x) == x));
        prop_assert!(!a.is_identity() == !p.is_identity());
    }

    #[test]
    fn chain_order_matches_closure(g in group(7)) {
        let els = elements(&g);
        prop_assert_eq!(g.order(), BigUint::from(els.len()));
        prop_assert!(g.chain().verify());
        for x in els.iter().take(20) {
            prop_assert!(g.contains(x).unwrap());
        }
    }

    #[test]
    fn base_sizes_are_ordered_and_exact(g in group(7)) {
        let els = elements(&g);
        let exact = base_size_exact(&g, 1_000_000);
        let b = exact.exact().unwrap();
        prop_assert_eq!(b, brute_base_size(g.degree(), &els));
        prop_assert!(base_lower_bound(&g.order(), g.degree()) <= b);
        prop_assert!(b <= base_size_greedy(&g).len());
        prop_assert!(is_irredundant_base(&g, exact.base()));
    }

    #[test]
    fn minimal_degree_matches_closure(g in group(7)) {
        let els = elements(&g);
        let Some(expected) = brute_mu(&els) else { return Ok(()) };
        let full = MuOptions { reduce_transitive: false, ..Default::default() };
        for m in [
            minimal_degree_exact(&g, &full).unwrap(),
            minimal_degree_exact(&g, &MuOptions::default()).unwrap(),
            minimal_degree_by_stabilizers(&g, 10_000).unwrap(),
        ] {
            prop_assert_eq!(m.mu, expected);
            prop_assert_eq!(m.witness.support_size(), expected);
            prop_assert!(g.contains(&m.witness).unwrap());
        }
    }

    #[test]
    fn product_bound_for_transitive_groups(g in group(8)) {
        prop_assume!(g.is_transitive() && !g.is_trivial());
        let b = base_size_exact(&g, 1_000_000).exact().unwrap();
        let mu = minimal_degree_exact(&g, &MuOptions::default()).unwrap().mu;
        prop_assert!(g.degree() <= b * mu);
    }

    #[test]
    fn field_axioms(qi in 0..SUPPORTED_Q.len(), a in 0u8..9, b in 0u8..9, c in 0u8..9) {
        let f = Field::get(SUPPORTED_Q[qi]).unwrap();
        let q = f.q() as u8;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn determinant_is_multiplicative(qi in 0..SUPPORTED_Q.len(), xs in prop::collection::vec(0u8..9, 18)) {
        let f = Field::get(SUPPORTED_Q[qi]).unwrap();
        let q = f.q() as u8;
        let rows = |s: &[u8]| -> Vec<Vec<u8>> { s.chunks(3).map(|r| r.iter().map(|x| x % q).collect()).collect() };
        let a = Matrix::from_rows(f, &rows(&xs[..9])).unwrap();
        let b = Matrix::from_rows(f, &rows(&xs[9..])).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), f.mul(a.det().unwrap(), b.det().unwrap()));
        prop_assert_eq!(a.inverse().is_ok(), a.det().unwrap() != 0);
    }
}

#[test]
fn minimal_degree_is_independent_of_worker_count() {
    let a = primbase_core::families::build(&"LinearOnPk(d=3,q=3,k=1)".parse().unwrap()).unwrap();
    let full = MuOptions {
        reduce_transitive: false,
        ..Default::default()
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| minimal_degree_exact(&a.group, &full).unwrap())
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one.mu, four.mu);
    assert_eq!(one.witness, four.witness);
}
