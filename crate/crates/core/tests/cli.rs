use std::process::Command;

use eqalg::cli::{default_golden_dir, golden_diff, golden_output, run, GOLDEN};
use serde_json::Value;

fn eqalg(args: &[&str]) -> eqalg::cli::Output {
    run(std::iter::once("eqalg").chain(args.iter().copied()))
}

fn diagnostic(stderr: &str) -> Value {
    let line = stderr.lines().last().expect("a diagnostic line");
    serde_json::from_str(line).expect("diagnostic is JSON")
}

#[test]
fn every_golden_case_matches() {
    let dir = default_golden_dir();
    for (file, args) in GOLDEN {
        let out = golden_output(args);
        assert_eq!(out.status, 0, "{file}: {}", out.stderr);
        if let Some(diff) = golden_diff(&dir.join(file), &out.stdout) {
            panic!("{file} drifted:\n{diff}");
        }
    }
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_eqalg");
    for args in [
        &["--format", "json", "group-ring", "--group", "s3", "--base", "Z"][..],
        &["--format", "json", "witt", "--base", "Z4", "--decompose"],
        &["laurent", "--window", "3"],
    ] {
        let a = Command::new(bin).args(args).output().unwrap();
        let b = Command::new(bin).args(args).output().unwrap();
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let usage = eqalg(&["graded", "--window", "3"]);
    assert_eq!(usage.status, 2);
    assert_eq!(diagnostic(&usage.stderr)["error"]["status"], 2);

    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let parse = eqalg(&["validate", "--input", garbage.to_str().unwrap()]);
    assert_eq!(parse.status, 2);
    assert_eq!(diagnostic(&parse.stderr)["error"]["kind"], "parse");

    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{"level_e": {"free_rank": 1, "torsion": []}, "level_fix": {"free_rank": 1, "torsion": []},
            "res": {"matrix": [[1]]}, "tran": {"matrix": [[2]]}, "w": {"matrix": [[-1]]}}"#,
    )
    .unwrap();
    let invalid = eqalg(&["--format", "json", "validate", "--input", broken.to_str().unwrap()]);
    assert_eq!(invalid.status, 3);
    let report: Value = serde_json::from_str(&invalid.stdout).unwrap();
    assert_eq!(report["valid"], false);

    let unsupported = eqalg(&["witt", "--base", "Z", "--decompose"]);
    assert_eq!(unsupported.status, 4);
    assert_eq!(diagnostic(&unsupported.stderr)["error"]["status"], 4);

    let missing = eqalg(&["laurent", "--window", "0"]);
    assert_eq!(missing.status, 4);
}

#[test]
fn reports_reingest_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("thr.json", &["thr-pi0", "--base", "Zi"][..]),
        ("thr_burnside.json", &["thr-pi0", "--base", "burnside"]),
        ("group_ring.json", &["group-ring", "--group", "c3", "--base", "F2"]),
        ("laurent.json", &["laurent", "--window", "2"]),
    ] {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let mut full = vec!["--format", "json", "--out", p];
        full.extend_from_slice(args);
        let out = eqalg(&full);
        assert_eq!(out.status, 0, "{name}: {}", out.stderr);
        assert!(out.stdout.is_empty());
        let check = eqalg(&["--format", "json", "validate", "--input", p]);
        assert_eq!(check.status, 0, "{name}: {}", check.stderr);
        let report: Value = serde_json::from_str(&check.stdout).unwrap();
        assert_eq!(report["valid"], true, "{name}");
    }
}

#[test]
fn selftest_shows_golden_drift() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(eqalg(&["selftest", "--golden-dir", d, "--bless"]).status, 0);
    assert_eq!(eqalg(&["selftest", "--golden-dir", d]).status, 0);

    let target = dir.path().join("laurent_5.json");
    let text = std::fs::read_to_string(&target).unwrap();
    std::fs::write(&target, text.replacen("1", "7", 1)).unwrap();
    let out = eqalg(&["selftest", "--golden-dir", d]);
    assert_eq!(out.status, 1);
    assert!(out.stdout.contains("golden drift in laurent_5.json"), "{}", out.stdout);
    assert!(out.stdout.lines().any(|l| l.starts_with('-')) && out.stdout.lines().any(|l| l.starts_with('+')));
}

#[test]
fn injected_fault_fails_selftest() {
    let out = eqalg(&["selftest", "--inject-fault", "burnside-tran"]);
    assert_eq!(out.status, 1);
    assert!(out.stdout.contains("criterion 14"));
}
