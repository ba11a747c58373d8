//! Known small values, checked end to end.

use num_bigint::BigUint;
use serde::Serialize;

use super::chains::check_inequality_chains;
use super::config::SweepConfig;
use super::record::Verdict;
use super::render::to_csv;
use super::sweep::run_sweep;
use crate::families::{build, load_mathieu24, witness, FamilySpec};
use crate::formulas::bounds::{bow10_wreath, n_log_n, thm2};
use crate::formulas::chains::{chain_diagonal, chain_largebase, chain_quadric, chain_quadric_min, f_partition};
use crate::formulas::{bz, degree, orders, BzValue};
use crate::gf::{DomainKind, Field, Form, FormKind, Matrix, Sign, SubspaceDomain};
use crate::invariants::{
    affine_mu_structure, base_size_exact, base_size_greedy, minimal_degree_exact, MuOptions, DEFAULT_BASE_BUDGET,
};
use crate::{PermGroup, Permutation};

#[derive(Clone, Debug, Serialize)]
pub struct SelftestCase {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(found: T, expected: T) -> Outcome {
    if found == expected {
        Ok(())
    } else {
        Err(format!("expected {expected:?}, found {found:?}"))
    }
}

fn ensure(cond: bool, what: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn p(images: &[usize]) -> Permutation {
    Permutation::from_images(images.iter().copied()).expect("valid permutation")
}

fn spec(s: &str) -> FamilySpec {
    s.parse().expect("valid spec")
}

fn exact_base(s: &str) -> Result<Option<usize>, String> {
    let a = build(&spec(s)).map_err(|e| e.to_string())?;
    Ok(base_size_exact(&a.group, DEFAULT_BASE_BUDGET).exact())
}

fn exact_mu(s: &str) -> Result<usize, String> {
    let a = build(&spec(s)).map_err(|e| e.to_string())?;
    minimal_degree_exact(&a.group, &MuOptions::default()).map(|m| m.mu).map_err(|e| e.to_string())
}

fn witness_support(s: &str) -> Result<usize, String> {
    let a = build(&spec(s)).map_err(|e| e.to_string())?;
    let w = witness(&a).map_err(|e| e.to_string())?.ok_or("no witness")?;
    Ok(w.support)
}

fn deg(s: &str) -> Result<usize, String> {
    Ok(build(&spec(s)).map_err(|e| e.to_string())?.n)
}

fn s4() -> PermGroup {
    PermGroup::new(4, vec![p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])]).expect("S4")
}

fn cases() -> Vec<(&'static str, Box<dyn Fn() -> Outcome>)> {
    vec![
        ("involution squared", Box::new(|| expect(p(&[1, 0, 2]).then(&p(&[1, 0, 2])), p(&[0, 1, 2])))),
        ("3-cycle inverse", Box::new(|| expect(p(&[1, 2, 0]).inverse(), p(&[2, 0, 1])))),
        ("support of a transposition", Box::new(|| expect(p(&[1, 0, 2]).support(), vec![0, 1]))),
        ("orbit of a 3-cycle", Box::new(|| {
            let g = PermGroup::new(4, vec![p(&[1, 2, 0, 3])]).map_err(|e| e.to_string())?;
            expect(g.orbit(0).map_err(|e| e.to_string())?.len(), 3)
        })),
        ("order of S4", Box::new(|| expect(s4().order(), BigUint::from(24u32)))),
        ("membership in S4 and A4", Box::new(|| {
            let t = p(&[1, 0, 2, 3]);
            ensure(s4().contains(&t).unwrap_or(false), "S4 contains (0 1)")?;
            ensure(!PermGroup::alternating(4).contains(&t).unwrap_or(true), "A4 lacks (0 1)")
        })),
        ("derived subgroup of S4", Box::new(|| expect(s4().derived_subgroup().order(), BigUint::from(12u32)))),
        ("primitivity", Box::new(|| {
            ensure(s4().is_primitive().unwrap_or(false), "S4 is primitive")?;
            let c = PermGroup::new(4, vec![p(&[1, 2, 3, 0])]).map_err(|e| e.to_string())?;
            ensure(!c.is_primitive().unwrap_or(true), "C4 is imprimitive")
        })),
        ("GF(2) and GF(4) arithmetic", Box::new(|| {
            let f2 = Field::get(2).map_err(|e| e.to_string())?;
            let f4 = Field::get(4).map_err(|e| e.to_string())?;
            let x = f4.primitive_element();
            expect((f2.add(1, 1), f4.mul(x, f4.mul(x, x))), (0, 1))
        })),
        ("elliptic and hyperbolic Q(e1)", Box::new(|| {
            let e = Form::standard(FormKind::Quadratic, 4, 2, Some(Sign::Minus)).map_err(|e| e.to_string())?;
            let h = Form::standard(FormKind::Quadratic, 4, 2, Some(Sign::Plus)).map_err(|e| e.to_string())?;
            let v = [1, 0, 0, 0];
            expect((e.evaluate(&v).map_err(|e| e.to_string())?, h.evaluate(&v).map_err(|e| e.to_string())?), (1, 0))
        })),
        ("Fano plane", Box::new(|| {
            let f = Field::get(2).map_err(|e| e.to_string())?;
            expect(SubspaceDomain::enumerate(f, 3, 1, DomainKind::All, None).map_err(|e| e.to_string())?.len(), 7)
        })),
        ("scalars act trivially on points", Box::new(|| {
            let f = Field::get(3).map_err(|e| e.to_string())?;
            let dom = SubspaceDomain::enumerate(f, 3, 1, DomainKind::All, None).map_err(|e| e.to_string())?;
            let g = dom.action(&Matrix::diagonal(f, &[2, 2, 2])).map_err(|e| e.to_string())?;
            ensure(g.is_identity(), "scalar matrix acts as the identity")
        })),
        ("subset and partition degrees", Box::new(|| {
            expect(
                (deg("SymSubsets(m=5,k=2)")?, spec("SymSubsets(m=6,k=3)").is_known_imprimitive(), deg("SymPartitions(a=2,b=3)")?,
                 deg("SymPartitions(a=4,b=2)")?, deg("SymPartitions(a=2,b=4)")?),
                (10, true, 15, 35, 105),
            )
        })),
        ("elliptic quadric degree", Box::new(|| expect(deg("GOOnS1(d=8,q=2,sign=-)")?, 119))),
        ("Sp(2) coset degrees", Box::new(|| {
            expect(
                (deg("SpOnGOCosets(d=6,q=2,sign=+)")?, deg("SpOnGOCosets(d=6,q=2,sign=-)")?, deg("SpOnGOCosets(d=4,q=2,sign=-)")?),
                (36, 28, 6),
            )
        })),
        ("wreath degree", Box::new(|| expect(deg("WreathProduct(r=2,inner=SymSubsets(m=5,k=2))")?, 100))),
        ("unitary degrees", Box::new(|| {
            expect(
                (degree::unitary_isotropic(6, 3, 2).ok(), degree::unitary_isotropic(6, 3, 3).ok()),
                (Some(BigUint::from(891u32)), Some(BigUint::from(27328u32))),
            )
        })),
        ("group orders", Box::new(|| {
            expect((orders::gl(3, 2), orders::gl(2, 4)), (BigUint::from(168u32), BigUint::from(180u32)))
        })),
        ("bz values", Box::new(|| {
            expect(
                (bz(2, 3).ok(), bz(4, 2).ok(), bz(5, 2).ok()),
                (Some(BzValue::Exact(4)), Some(BzValue::Exact(5)), Some(BzValue::Exact(4))),
            )
        })),
        ("bound values", Box::new(|| {
            let v = n_log_n(24.0);
            ensure(thm2(4096.0).ok() == Some(12.0), "thm2(4096) = 12")?;
            ensure(v > 110.0 && v < 110.1, "24 log 24 is about 110.04")?;
            expect(bow10_wreath(2, 10, 3).ok(), Some(4))
        })),
        ("inequality-chain values", Box::new(|| {
            let f = |a| f_partition(a).unwrap_or(f64::NAN);
            ensure(f(10) > 0.0 && f(9) <= 0.0 && f(11) > f(10), "f(a) sign change at 10 and growth")?;
            expect((chain_quadric(16, 3), chain_quadric(7, 3)), (63.0, 9.0))?;
            expect(chain_quadric_min(16).ok(), Some((3, 63.0)))?;
            let g = |k| chain_diagonal(k).unwrap_or(f64::NAN);
            ensure(g(3) < 0.0 && g(4) < g(3), "diagonal chain negative and decreasing")?;
            ensure(chain_largebase(20, 40, 1).is_ok_and(|v| v >= 0.0), "f(20,40,1) >= 0")
        })),
        ("inequality-chain suite core claims", Box::new(|| {
            let r = check_inequality_chains();
            for name in ["partition_sign_change", "product_action_k2", "largebase_corner"] {
                ensure(r.get(name).is_some_and(|c| c.holds()), name)?;
            }
            Ok(())
        })),
        ("base sizes", Box::new(|| {
            expect(base_size_exact(&s4(), 1000).exact(), Some(3))?;
            expect(base_size_greedy(&s4()).len(), 3)?;
            expect(exact_base("SymPartitions(a=2,b=3)")?, Some(4))?;
            let agl = build(&spec("Affine(d=3,q=2)")).map_err(|e| e.to_string())?;
            ensure(base_size_greedy(&agl.group).len() <= 4, "greedy base of AGL_3(2) has at most 4 points")
        })),
        ("M24 base size and minimal degree", Box::new(|| {
            let g = load_mathieu24().map_err(|e| e.to_string())?;
            let b = base_size_exact(&g, DEFAULT_BASE_BUDGET).exact();
            let mu = minimal_degree_exact(&g, &MuOptions::default()).map_err(|e| e.to_string())?.mu;
            expect((b, mu), (Some(7), 16))
        })),
        ("minimal degrees", Box::new(|| {
            expect(minimal_degree_exact(&s4(), &MuOptions::default()).map(|m| m.mu).ok(), Some(2))?;
            expect((exact_mu("Affine(d=3,q=2)")?, exact_mu("LinearOnPk(d=4,q=2,k=1)")?), (4, 8))
        })),
        ("witness supports", Box::new(|| {
            expect(
                (witness_support("AltSubsets(m=7,k=3)")?, witness_support("GOOnS1(d=8,q=2,sign=-)")?,
                 witness_support("WreathProduct(r=2,inner=SymSubsets(m=5,k=2))")?),
                (30, 84, 60),
            )
        })),
        ("affine fixed space", Box::new(|| {
            let a = build(&spec("Affine(d=3,q=2)")).map_err(|e| e.to_string())?;
            let s = affine_mu_structure(&a).map_err(|e| e.to_string())?;
            expect((s.t, s.mu_linear, s.base.len()), (2, 4, 3))
        })),
        ("sweep examples", Box::new(|| {
            let run = |text: &str| run_sweep(&SweepConfig::parse(text).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string());
            let affine = run("grid Affine d=1..4 q=2")?;
            ensure(affine.records.iter().all(|r| r.thm1 == Verdict::Pass), "AGL_d(2) passes thm1")?;
            let m24 = run("grid Mathieu24")?;
            let r = &m24.records[0];
            ensure(r.thm1 == Verdict::Fail && r.expected_exception, "M24 is the expected failure")?;
            let part = run("grid SymPartitions a=2 b=3")?;
            let m = part.records[0].thm2_margin.unwrap_or(f64::NAN);
            ensure((m - 3.953).abs() < 1e-3 && part.records[0].thm2 == Verdict::Pass, "partition thm2 margin")?;
            let three = run("grid Affine d=2..4 q=2")?;
            expect(three.summary.line(), "3 checked, 0 unexpected failures".to_string())?;
            expect(to_csv(&[]).map_err(|e| e.to_string())?.lines().count(), 1)
        })),
    ]
}

/// Runs every case; a panicking case counts as failed.
pub fn run_selftest() -> Vec<SelftestCase> {
    cases()
        .into_iter()
        .map(|(name, f)| {
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
                .unwrap_or_else(|_| Err("panicked".to_string()));
            SelftestCase {
                name,
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_cases_pass() {
        let failed: Vec<_> = super::run_selftest().into_iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
