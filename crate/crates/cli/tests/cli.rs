use std::process::{Command, Output};

fn primbase(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_primbase"));
    cmd.args(args).env_remove("PRIMBASE_THREADS");
    if let Some(t) = threads {
        cmd.env("PRIMBASE_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn write_grid(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("primbase-{}-{name}.grid", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn sweep_csv_and_exit_zero() {
    let grid = write_grid("affine", "grid Affine d=2,3 q=2\n");
    let out = primbase(&["sweep", grid.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("index,line,spec,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2 checked, 0 unexpected failures"));
}

#[test]
fn expected_exception_is_not_an_error() {
    let out = primbase(&["family", "Mathieu24"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("known exception"));
}

#[test]
fn json_and_out_file() {
    let grid = write_grid("json", "format = json\ngrid SymPartitions a=2 b=3\n");
    let out_path = grid.with_extension("json");
    let out = primbase(&["sweep", grid.to_str().unwrap(), "--out", out_path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("\"scope\"") && text.contains("\"thm2\": \"pass\""), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    let grid = write_grid("bad", "checks = thm3\n");
    assert_eq!(primbase(&["sweep", grid.to_str().unwrap()], None).status.code(), Some(2));
    assert_eq!(primbase(&["sweep", "/no/such/file.grid"], None).status.code(), Some(2));
    assert_eq!(primbase(&["family", "Affine(d=2,q=6)"], None).status.code(), Some(2));
    assert_eq!(primbase(&["frobnicate"], None).status.code(), Some(2));
    let ok = write_grid("ok", "grid Affine d=2 q=2\n");
    assert_eq!(primbase(&["sweep", ok.to_str().unwrap()], Some("zero")).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = primbase(&["selftest"], Some("1"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
