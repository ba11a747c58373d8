//! Acceptance suite. Prints one line per criterion and exits non-zero on any
//! failure that is not listed in `KNOWN_FAILURES`.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigUint;
use primbase_core::families::{build, load_mathieu24, witness, ConstructedAction, FamilySpec};
use primbase_core::formulas::bounds::n_log_n;
use primbase_core::formulas::{bz, degree, BzValue};
use primbase_core::invariants::{
    action_invariants, base_size_exact, minimal_degree_exact, InvariantOptions, MuMethod,
    MuOptions, DEFAULT_BASE_BUDGET,
};
use primbase_core::verifier::record::ValueKind;
use primbase_core::verifier::{check_inequality_chains, run_sweep, SweepConfig, Verdict, THREADS_VAR};

/// Criteria that cannot hold as stated, with the exact failure expected.
const KNOWN_FAILURES: [(u32, &str); 1] = [(7, "largebase_increasing_k")];

type Outcome = Result<String, String>;

fn grid_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../grids/paper-desk.grid")
}

fn built(s: &str) -> Result<ConstructedAction, String> {
    let spec: FamilySpec = s.parse().map_err(|e| format!("{s}: {e}"))?;
    build(&spec).map_err(|e| format!("{s}: {e}"))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mathieu() -> Outcome {
    let g = load_mathieu24().map_err(|e| e.to_string())?;
    let b = base_size_exact(&g, DEFAULT_BASE_BUDGET).exact();
    let opts = MuOptions {
        reduce_transitive: false,
        ..MuOptions::default()
    };
    let mu = minimal_degree_exact(&g, &opts).map_err(|e| e.to_string())?;
    check(mu.method == MuMethod::FullEnumeration, || format!("method {:?}", mu.method))?;
    let bound = n_log_n(24.0);
    check(b == Some(7) && mu.mu == 16, || format!("b = {b:?}, mu = {}", mu.mu))?;
    check(bound > 110.0 && bound < 110.1, || format!("24 log 24 = {bound}"))?;
    let config = SweepConfig::parse("grid Mathieu24").map_err(|e| e.to_string())?;
    let r = &run_sweep(&config, None).map_err(|e| e.to_string())?.records[0];
    check(r.product == Some(112) && r.thm1 == Verdict::Fail && r.expected_exception, || {
        format!("product {:?}, thm1 {}, expected {}", r.product, r.thm1, r.expected_exception)
    })?;
    Ok(format!("b = 7, mu = 16 by full enumeration, 112 > {bound:.2}, FAIL as expected"))
}

fn partitions() -> Outcome {
    let mut seen = Vec::new();
    for (a, b, n, want) in [(2, 3, 15, 4), (2, 4, 105, 3), (4, 2, 35, 5)] {
        let g = built(&format!("SymPartitions(a={a},b={b})"))?;
        let exact = base_size_exact(&g.group, DEFAULT_BASE_BUDGET).exact();
        let formula = bz(a, b).map_err(|e| e.to_string())?;
        check(g.n == n && exact == Some(want) && formula == BzValue::Exact(want as u64), || {
            format!("({a},{b}): n = {}, b = {exact:?}, bz = {formula:?}", g.n)
        })?;
        seen.push(format!("({a},{b}) -> {want}"));
    }
    Ok(seen.join(", "))
}

fn record_of(s: &str) -> Result<primbase_core::verifier::VerificationRecord, String> {
    let config = SweepConfig::parse(&format!("grid {}", grid_line(s))).map_err(|e| e.to_string())?;
    let r = run_sweep(&config, None).map_err(|e| e.to_string())?.records.remove(0);
    check(r.skipped.is_none(), || format!("{s} skipped: {:?}", r.skipped))?;
    Ok(r)
}

/// `Family(k=v,...)` as a grid line `Family k=v ...`.
fn grid_line(s: &str) -> String {
    match s.split_once('(') {
        Some((name, rest)) => format!("{name} {}", rest.trim_end_matches(')').replace(',', " ")),
        None => s.to_string(),
    }
}

fn psl_points() -> Outcome {
    let mut seen = Vec::new();
    for d in [3usize, 4] {
        let s = format!("LinearOnPk(d={d},q=2,k=1)");
        let r = record_of(&s)?;
        let want = 1 << (d - 1);
        check(r.mu == Some(want) && r.mu_kind == ValueKind::Exact, || format!("{s}: mu = {:?}", r.mu))?;
        let margin = r.thm1_margin.unwrap_or(f64::NAN);
        check(margin > 0.0 && r.thm1 == Verdict::Pass, || format!("{s}: thm1 margin {margin}"))?;
        seen.push(format!("d={d}: mu = {want}, margin {margin:.2}"));
    }
    Ok(seen.join("; "))
}

fn affine() -> Outcome {
    for d in 2..=4usize {
        let s = format!("Affine(d={d},q=2)");
        let r = record_of(&s)?;
        let (b, mu) = (r.b.unwrap_or(0), r.mu.unwrap_or(0));
        check(r.b_kind == ValueKind::Exact && r.mu_kind == ValueKind::Exact, || format!("{s}: inexact"))?;
        check(b == d + 1 && mu == 1 << (d - 1), || format!("{s}: b = {b}, mu = {mu}"))?;
        check(b * mu < d << d, || format!("{s}: b*mu = {} not below {}", b * mu, d << d))?;
    }
    Ok("b = d+1, mu = 2^(d-1), b*mu < d*2^d for d = 2, 3, 4".into())
}

fn degrees() -> Outcome {
    let points = [
        ("SpOnGOCosets(d=6,sign=-)", 28),
        ("SpOnGOCosets(d=6,sign=+)", 36),
        ("GOOnS1(d=6,q=2,sign=-)", 27),
        ("GOOnS1(d=6,q=2,sign=+)", 35),
        ("LinearOnPk(d=3,q=2,k=1)", 7),
        ("LinearOnPk(d=4,q=2,k=1)", 15),
        ("LinearOnPk(d=4,q=3,k=1)", 40),
        ("LinearOnPk(d=4,q=2,k=2)", 35),
        ("SpOnSk(d=6,q=2,k=1)", 63),
        ("GOOnS1(d=8,q=2,sign=-)", 119),
        ("GOOnS1(d=5,q=3,sign=o)", 40),
        ("UnitaryOnS1(d=4,q=2)", 45),
        ("UnitaryOnN1(d=4,q=2)", 40),
        ("SymSubsets(m=7,k=3)", 35),
        ("SymPartitions(a=2,b=4)", 105),
        ("WreathProduct(r=2,inner=SymSubsets(m=5,k=2))", 100),
    ];
    for (s, n) in points {
        let a = built(s)?;
        let formula = degree(&a.spec).map_err(|e| e.to_string())?;
        check(a.group.degree() == n && formula == BigUint::from(n), || {
            format!("{s}: enumerated {}, formula {formula}, expected {n}", a.group.degree())
        })?;
    }
    Ok(format!("{} points agree", points.len()))
}

fn elliptic_witness() -> Outcome {
    let mut seen = Vec::new();
    for s in ["GOOnS1(d=8,q=2,sign=-)", "OmegaOnS1(d=8,q=2,sign=-)"] {
        let a = built(s)?;
        let w = witness(&a).map_err(|e| e.to_string())?.ok_or_else(|| format!("{s}: no witness"))?;
        let fixed = a.n - w.support;
        check(fixed == 35 && w.support == 84 && w.expected == Some(84), || {
            format!("{s}: fixes {fixed}, support {}", w.support)
        })?;
        let rep = action_invariants(&a, &InvariantOptions::default()).map_err(|e| e.to_string())?;
        match rep.mu_exact {
            Some(mu) => {
                check(mu <= 84, || format!("{s}: mu = {mu}"))?;
                seen.push(format!("{s}: mu = {mu} <= 84"));
            }
            None => seen.push(format!("{s}: witness only, mu <= 84")),
        }
    }
    Ok(format!("fixes 35, support 84; {}", seen.join("; ")))
}

fn chains() -> Outcome {
    let report = check_inequality_chains();
    let names = [
        "partition_sign_change",
        "diagonal_negative_decreasing",
        "product_action_k2",
        "product_action",
        "largebase_corner",
        "largebase_nonnegative",
        "largebase_increasing_m",
        "largebase_increasing_r",
        "largebase_increasing_k",
    ];
    let mut failed = Vec::new();
    for name in names {
        let c = report.get(name).ok_or_else(|| format!("missing check {name}"))?;
        if !c.holds() {
            failed.push(format!("{name} ({} of {} samples, first {})", c.violations, c.samples, c.examples[0]));
        }
    }
    if failed.is_empty() {
        Ok(format!("{} checks hold", names.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn substitutions() -> Outcome {
    let text = std::fs::read_to_string(grid_path()).map_err(|e| e.to_string())?;
    let config = SweepConfig::parse(&text).map_err(|e| e.to_string())?;
    let result = run_sweep(&config, None).map_err(|e| e.to_string())?;
    let checked: Vec<_> = result.records.iter().filter(|r| r.skipped.is_none()).collect();
    let mut thm2 = 0;
    let mut lower = 0;
    let mut greedy = 0;
    let mut gated = 0;
    for r in &checked {
        if r.thm2_exemption.is_none() {
            check(r.thm2 == Verdict::Pass, || format!("{}: thm2 {}", r.spec, r.thm2))?;
            thm2 += 1;
        }
        if let (Some(n), Some(b), Some(mu), Some(true)) = (r.n, r.b, r.mu, r.transitive) {
            if r.b_kind == ValueKind::Exact && r.mu_kind == ValueKind::Exact {
                check(n <= b * mu && r.lower_bound == Verdict::Pass, || format!("{}: n > b*mu", r.spec))?;
                lower += 1;
            }
        }
        if r.n.is_some_and(|n| n <= 200) && r.b_kind == ValueKind::Exact {
            check(r.b_greedy >= r.b, || format!("{}: greedy {:?} < exact {:?}", r.spec, r.b_greedy, r.b))?;
            greedy += 1;
        }
        let classical = ["LinearOnPk", "SpOn", "GOOn", "OmegaOn", "UnitaryOn"].iter().any(|p| r.spec.starts_with(p));
        if classical {
            check(r.formula == Verdict::Pass, || format!("{}: order gate {}", r.spec, r.formula))?;
            gated += 1;
        }
    }
    check(
        result.summary.unexpected_failures == 0 && result.summary.expected_failures == 1,
        || result.summary.line(),
    )?;
    Ok(format!(
        "thm2 PASS on {thm2} non-exempt, n <= b*mu on {lower}, greedy >= exact on {greedy}, \
         order gate on {gated} classical; {}",
        result.summary.line()
    ))
}

fn sweep_with_threads(threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_primbase"))
        .arg("sweep")
        .arg(grid_path())
        .env(THREADS_VAR, threads)
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.code() == Some(0), || format!("exit status {:?}", out.status))?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let (a, b) = (sweep_with_threads("1")?, sweep_with_threads("3")?);
    check(a == b, || "reports differ between 1 and 3 threads".into())?;
    Ok(format!("{} identical bytes with 1 and 3 threads", a.len()))
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        (1, "M24 exception", mathieu),
        (2, "partition base sizes", partitions),
        (3, "PSL_d(2) on points", psl_points),
        (4, "AGL_d(2)", affine),
        (5, "degree formulas", degrees),
        (6, "elliptic quadric witness", elliptic_witness),
        (7, "inequality chains", chains),
        (8, "substituted sweep checks", substitutions),
        (9, "determinism", determinism),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} PASS  {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES
                    .iter()
                    .any(|&(k, what)| k == id && detail.starts_with(what) && !detail.contains("; "));
                let tag = if known { "FAIL (known)" } else { "FAIL" };
                println!("criterion {id} {tag}  {name} [{secs:.1}s]: {detail}");
                unexpected += (!known) as usize;
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
