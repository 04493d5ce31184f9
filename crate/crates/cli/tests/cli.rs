use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbound")).args(args).env_remove("QBOUND_TOL").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn random_then_bound_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    let out = qbound(&["random", "--k", "5", "--n", "2", "--seed", "42", "--out", s(&file)]);
    assert!(out.status.success());

    let out = qbound(&["bound", s(&file)]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
    assert!(v["tightest"].is_string());

    let out = qbound(&["bound", s(&file), "--bounds", "thm35,b1"]);
    let v = json(&out);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["bound_name"].as_str().unwrap()).collect();
    assert_eq!(names, ["thm35", "b1_baseline"]);

    let out = qbound(&["verify", s(&file), "--eigenpairs"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["row"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["row"]["eigenpairs_checked"], 10);
    assert_eq!(v["tolerance"]["source"], "default");
}

#[test]
fn random_to_stdout_is_deterministic() {
    let a = qbound(&["random", "--k", "4", "--n", "1", "--seed", "7"]);
    let b = qbound(&["random", "--k", "4", "--n", "1", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!qbound(&["random", "--k", "4", "--n", "1", "--seed", "7", "--scale", "0"]).status.success());
}

#[test]
fn zeros_for_scalar_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    fs::write(&file, "[[0.5,0,0,0],[0,0.2,0,0],[0,0,-0.3,0],[0,0,0,0.1],[0.4,0,0,0]]").unwrap();
    let out = qbound(&["zeros", "--coeffs", s(&file)]);
    assert!(out.status.success());
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    let max = v["max_modulus"].as_f64().unwrap();
    for e in entries {
        assert_eq!(e["status"], "computed");
        assert!(max <= e["value"].as_f64().unwrap());
    }
    assert_eq!(v["zero_moduli"].as_array().unwrap().len(), 5);
}

#[test]
fn zeros_skips_below_degree_floor() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    fs::write(&file, "[[1,0,0,0],[0,0,0,0],[0,1,0,0],[0,0,0,0]]").unwrap();
    let v = json(&qbound(&["zeros", "--coeffs", s(&file)]));
    assert_eq!(v["entries"][2]["status"], "skipped");
}

#[test]
fn suite_writes_reports_and_sets_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.json");
    fs::write(&cfg, r#"{"random": {"count": 6, "k_min": 3, "k_max": 5, "n_min": 1, "n_max": 2}}"#).unwrap();
    let out_dir = dir.path().join("out");
    let out = qbound(&["suite", "--config", s(&cfg), "--out-dir", s(&out_dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("results.csv")).unwrap();
    assert!(csv.starts_with("id,k,n,rho_r,thm35,thm36,thm37,b1,tightest,"));
    assert_eq!(csv.lines().count(), 7);

    let again = dir.path().join("again");
    qbound(&["suite", "--config", s(&cfg), "--out-dir", s(&again)]);
    assert_eq!(fs::read(out_dir.join("results.csv")).unwrap(), fs::read(again.join("results.csv")).unwrap());
    assert_eq!(fs::read(out_dir.join("summary.json")).unwrap(), fs::read(again.join("summary.json")).unwrap());

    // an absurd negative slack turns every comparison into a violation
    let out = Command::new(env!("CARGO_BIN_EXE_qbound"))
        .args(["suite", "--config", s(&cfg), "--out-dir", s(&dir.path().join("neg"))])
        .env("QBOUND_TOL", "-5")
        .output()
        .unwrap();
    assert!(!out.status.success());

    let out = Command::new(env!("CARGO_BIN_EXE_qbound"))
        .args(["suite", "--config", s(&cfg), "--out-dir", s(&dir.path().join("tol"))])
        .env("QBOUND_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("tol/summary.json")).unwrap()).unwrap();
    assert_eq!(summary["tolerance"], 1e-6);
    assert_eq!(summary["tolerance_source"], "env");
}

#[test]
fn empty_suite_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.json");
    fs::write(&cfg, "{}").unwrap();
    let out = qbound(&["suite", "--config", s(&cfg), "--out-dir", s(&dir.path().join("o"))]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("o/results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n": 1, "k": 2}"#).unwrap();
    let out = qbound(&["bound", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coeffs"));
    assert_eq!(qbound(&["verify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(qbound(&["bound", s(&bad), "--bounds", "thm99"]).status.code(), Some(2));
}
