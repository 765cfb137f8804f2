//! Black-box tests of the `rtinv` binary: output shape and exit codes.

use std::process::Command;

fn rtinv(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rtinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn tau_prints_result_record() {
    let out = rtinv(&["tau", "--theory", "su:N=2,k=1", "--manifold", "lens:1,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theory=su:N=2,k=1 manifold=lens:1,1 value="));
    assert!(text.contains("wall_ms="));
}

#[test]
fn data_writes_parsable_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tables.txt");
    let out = rtinv(&["data", "--theory", "u1:k=2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let md = rtinv::io::parse_modular(&text).unwrap();
    assert_eq!(md.labels.len(), 4);
}

#[test]
fn bad_theory_exits_with_parse_code() {
    let out = rtinv(&["tau", "--theory", "bogus:x=1", "--manifold", "lens:2,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error:"));
}

#[test]
fn verify_suite_reports_machine_readable_lines() {
    let out = rtinv(&["verify", "coset"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("suite=coset check=") && l.ends_with("status=pass")));
    assert!(text.lines().any(|l| l.starts_with("suite=coset checks=") && l.ends_with("failures=0")));
}

#[test]
fn unknown_suite_is_a_parse_error() {
    let out = rtinv(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
