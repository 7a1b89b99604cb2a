//! End-to-end tests of the command-line interface: output contract
//! (the last stdout line is the bare result), exit codes, JSON schema,
//! and file round-trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rwsat"))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("scratch file writes");
    path
}

fn last_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or_default().to_string()
}

const TWO_CLAUSES: &str = "p cnf 2 2\n1 2 0\n-1 -2 0\n";

#[test]
fn count_prints_the_model_count_as_the_last_line() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "two.cnf", TWO_CLAUSES);
    let out = bin().arg("count").arg(&cnf).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(last_line(&out), "2");
}

#[test]
fn free_variables_multiply_the_count() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "free.cnf", "p cnf 3 0\n");
    let out = bin().arg("count").arg(&cnf).output().unwrap();
    assert!(out.status.success());
    assert_eq!(last_line(&out), "8");
}

#[test]
fn maxsat_reports_the_best_achievable_clause_count() {
    let dir = tempfile::tempdir().unwrap();
    let contra = write_file(dir.path(), "contra.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let out = bin().arg("maxsat").arg(&contra).output().unwrap();
    assert!(out.status.success());
    assert_eq!(last_line(&out), "1");

    let two = write_file(dir.path(), "two.cnf", TWO_CLAUSES);
    let out = bin().arg("maxsat").arg(&two).output().unwrap();
    assert!(out.status.success());
    assert_eq!(last_line(&out), "2");
}

#[test]
fn the_empty_formula_has_one_model_and_nothing_to_satisfy() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "empty.cnf", "p cnf 0 0\n");
    let out = bin().arg("count").arg(&cnf).output().unwrap();
    assert!(out.status.success());
    assert_eq!(last_line(&out), "1");
    let out = bin().arg("maxsat").arg(&cnf).output().unwrap();
    assert!(out.status.success());
    assert_eq!(last_line(&out), "0");
}

#[test]
fn json_report_carries_the_schema_and_still_ends_with_the_bare_result() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "two.cnf", TWO_CLAUSES);
    let out = bin().arg("count").arg(&cnf).arg("--json").output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    assert_eq!(stdout.lines().last().unwrap(), "2");
    let body = &stdout[..stdout.rfind('}').unwrap() + 1];
    let v: serde_json::Value = serde_json::from_str(body).expect("JSON body parses");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "count");
    assert_eq!(v["formula"]["vars"], 2);
    assert_eq!(v["decomposition"]["source"], "exact");
    assert_eq!(v["result"]["kind"], "count");
    assert_eq!(v["result"]["value"], "2");
    assert!(v["timing_ms"]["total"].as_f64().unwrap() >= 0.0);
}

#[test]
fn unparseable_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let junk = write_file(dir.path(), "junk.cnf", "this is not dimacs\n");
    let out = bin().arg("count").arg(&junk).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn invalid_decomposition_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "two.cnf", TWO_CLAUSES);
    let bad = write_file(dir.path(), "bad.dec", "((v1,c1)\n");
    let out = bin().arg("count").arg(&cnf).arg("--decomp").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // structurally fine, but the leaves do not cover the graph
    let wrong = write_file(dir.path(), "wrong.dec", "(v1,c1)\n");
    let out = bin().arg("count").arg(&cnf).arg("--decomp").arg(&wrong).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_then_solve_with_the_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "two.cnf", TWO_CLAUSES);
    let dec = dir.path().join("two.dec");
    let out = bin().arg("decompose").arg(&cnf).arg("-o").arg(&dec).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(dec.exists());

    let out = bin()
        .arg("count")
        .arg(&cnf)
        .arg("--decomp")
        .arg(&dec)
        .arg("--json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    assert_eq!(stdout.lines().last().unwrap(), "2");
    let body = &stdout[..stdout.rfind('}').unwrap() + 1];
    let v: serde_json::Value = serde_json::from_str(body).unwrap();
    assert_eq!(v["decomposition"]["source"], "file");
}

#[test]
fn width_reports_the_signed_width_as_the_last_line() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "two.cnf", TWO_CLAUSES);
    let out = bin().arg("width").arg(&cnf).output().unwrap();
    assert!(out.status.success());
    assert_eq!(last_line(&out), "2"); // one dimension per sign on this fixture
}

#[test]
fn verify_runs_random_instances_and_reports_zero_mismatches() {
    let out = bin()
        .args(["verify", "--instances", "8", "--seed", "11", "--threads", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(last_line(&out), "0");
    assert!(String::from_utf8_lossy(&out.stdout).contains("verified 8 instance(s)"));
}

#[test]
fn verify_accepts_a_single_file() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(dir.path(), "two.cnf", TWO_CLAUSES);
    let out = bin().arg("verify").arg(&cnf).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(last_line(&out), "0");
}

#[test]
fn bench_writes_the_requested_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = bin()
        .args(["bench", "--family", "chain", "--sizes", "50..100", "--csv"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let written = std::fs::read_to_string(&csv).unwrap();
    let mut lines = written.lines();
    assert_eq!(lines.next(), Some("size,width,wall_ms"));
    let sizes: Vec<&str> =
        lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(sizes, ["50", "100"]);
}
