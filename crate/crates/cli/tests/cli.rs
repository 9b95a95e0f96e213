use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenrecon")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

const P3: &str = "3\n0 1 0\n1 0 1\n0 1 0\n";
const ZERO2: &str = "2\n0 0\n0 0\n";

#[test]
fn squares_of_path_contains_quarter() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p3.txt", P3);
    let out = run(&["squares", s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cell = num(&v["squares"]["table"][0][0]);
    assert!((cell - 0.25).abs() <= 1e-12);
    assert_eq!(v["squares"]["provenance"], "from-deck");
}

#[test]
fn rank1_on_zero_matrix_with_ones() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "z.txt", ZERO2);
    let out = run(&["rank1", s(&a), "--x", "ones", "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let values: Vec<f64> = v["values"].as_array().unwrap().iter().map(num).collect();
    assert_eq!(values.len(), 2);
    assert!((values[0] - 2.0).abs() <= 1e-12);
    assert!(values[1].abs() <= 1e-12);
}

#[test]
fn rank1_accepts_negative_t_and_vector_file() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p3.txt", P3);
    let x = write(&dir, "x.txt", "3\n1 0 0\n");
    let out = run(&["rank1", s(&a), "--x", s(&x), "--t", "-0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let sum: f64 = json(&out)["values"].as_array().unwrap().iter().map(num).sum();
    assert!((sum + 0.5).abs() <= 1e-12);
}

#[test]
fn gm_verify_reflexive_passes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "4\n0.3 1 0 -0.2\n1 0.1 0.7 0\n0 0.7 -0.4 0.5\n-0.2 0 0.5 0.9\n");
    let out = run(&["gm-verify", s(&a), s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["spectra_equal", "deck", "squares", "projections", "signs", "theorem_main"] {
        assert_eq!(v[key]["pass"], true, "{key}");
    }
    assert_eq!(v["pass"], true);
}

#[test]
fn gm_verify_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", P3);
    let b = write(&dir, "b.txt", "3\n0 1 1\n1 0 1\n1 1 0\n");
    let out = run(&["gm-verify", s(&a), s(&b)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "2\n1 x\n0 1\n");
    let a = write(&dir, "p3.txt", P3);
    let z = write(&dir, "z.txt", ZERO2);
    let missing = dir.path().join("missing.txt");
    for args in [
        vec!["eig", s(&bad)],
        vec!["eig", s(&missing)],
        vec!["gm-verify", s(&a), s(&z)],
        vec!["rank1", s(&a), "--x", s(&z), "--t", "1"],
        vec!["eig", s(&a), "--cluster-tol", "-1"],
        vec!["tmain", s(&a), s(&a), "--t-samples", "3,-1"],
        vec!["squares"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "3\n0.5 -1 0.25\n-1 0 2\n0.25 2 -0.75\n");
    for args in [
        vec!["eig", s(&a)],
        vec!["deck", s(&a), "--format", "text"],
        vec!["rank1", s(&a), "--x", "ones", "--t", "0.3"],
        vec!["det-check", s(&a), "--x", "ones", "--t", "-3", "--seed", "11"],
        vec!["tmain", s(&a), s(&a)],
    ] {
        let first = run(&args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn eigenvalues_print_with_seventeen_digits() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p3.txt", P3);
    let out = run(&["eig", s(&a)]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1.4142135623730951e+0"));
    assert!(text.contains("-1.4142135623730951e+0"));
}

#[test]
fn probe_finds_relabeling() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "3\n1 0.5 0\n0.5 2 0.3\n0 0.3 -1\n");
    // rows and columns reordered by [2, 0, 1]
    let b = write(&dir, "b.txt", "3\n-1 0 0.3\n0 1 0.5\n0.3 0.5 2\n");
    let out = run(&["probe-tau", s(&a), s(&b), "--index", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["outcome"], "found");
    assert_eq!(v["result"]["permutation"], serde_json::json!([2, 0, 1]));
}

#[test]
fn det_check_passes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "3\n0.5 -1 0.25\n-1 0 2\n0.25 2 -0.75\n");
    let out = run(&["det-check", s(&a), "--x", "ones", "--t", "0.7", "--probes", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["probes"].as_array().unwrap().len(), 10);
    assert!(num(&v["report"]["max_relative_deviation"]) <= 1e-9);
}
