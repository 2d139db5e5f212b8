use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dworklab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dworklab"))
        .arg("--cache")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn count_and_cache_hit() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let args = ["count", "--p", "7", "--n", "2", "--lambda", "0"];
    let cold = dworklab(&cache, &args);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(json(&cold), serde_json::json!({"count": 9, "m": 1, "q": 7}));
    let lines = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(lines.lines().count(), 1);
    let record: Value = serde_json::from_str(lines.trim()).unwrap();
    assert_eq!(record["kind"], "plain");
    assert_eq!(record["count"], 9);

    let warm = dworklab(&cache, &args);
    assert_eq!(warm.stdout, cold.stdout);
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), lines);
}

#[test]
fn quotient_matches_count_for_curves() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    for m in ["1", "2"] {
        let a = dworklab(&cache, &["count", "--p", "7", "--n", "2", "--lambda", "3", "--m", m]);
        let b = dworklab(&cache, &["quotient-count", "--p", "7", "--n", "2", "--lambda", "3", "--m", m]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--theorem", "wan-mirror", "--p", "5", "--k", "2", "--n", "3", "--lambda", "0,1", "--max-m", "1"];
    let one = dworklab(&dir.path().join("a.jsonl"), &[&["--threads", "1"], &args[..]].concat());
    let four = dworklab(&dir.path().join("b.jsonl"), &[&["--threads", "4"], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
    let v = json(&one);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["q"], 25);
}

#[test]
fn verify_isogeny_reports_exact_equality() {
    let dir = tempfile::tempdir().unwrap();
    let out = dworklab(&dir.path().join("c.jsonl"), &["verify", "--theorem", "isogeny-n2", "--p", "13", "--n", "2", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["exact"], serde_json::json!([true, true]));
    // the table goes to stderr, stdout stays pure JSON
    assert!(!out.stderr.is_empty());
}

#[test]
fn refusals_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let code = |args: &[&str]| dworklab(&cache, args).status.code();
    // lambda = 1 is singular for the cubic over F_7
    assert_eq!(code(&["verify", "--theorem", "isogeny-n2", "--p", "7", "--n", "2", "--lambda", "1"]), Some(4));
    assert_eq!(code(&["verify", "--theorem", "isogeny-n2", "--p", "5", "--n", "3", "--lambda", "0"]), Some(4));
    // 4 does not divide 7 - 1: the action is not defined over F_7
    assert_eq!(code(&["quotient-count", "--p", "7", "--n", "3", "--lambda", "0"]), Some(4));
    assert_eq!(code(&["scan-smooth", "--p", "2", "--n", "3"]), Some(4));
    assert_eq!(code(&["count", "--p", "7", "--n", "2", "--lambda", "9"]), Some(1));
    assert_eq!(code(&["count", "--p", "6", "--n", "2", "--lambda", "0"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["newton", "--coeffs", "0,1", "--q", "7"]), Some(1));
    assert_eq!(code(&["--cap", "1000", "count", "--p", "13", "--n", "3", "--lambda", "0"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
    assert!(!cache.exists() || std::fs::read_to_string(&cache).unwrap().is_empty());
}

#[test]
fn zeta_and_newton_json() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let out = dworklab(&cache, &["newton", "--coeffs", "1,-3,7", "--q", "7"]);
    assert_eq!(
        json(&out),
        serde_json::json!({"polygon": {"segments": [{"length": 1, "slope": "0/1"}, {"length": 1, "slope": "1/1"}]}, "q": 7, "unit_roots": 1})
    );
    let z = json(&dworklab(&cache, &["zeta", "--p", "7", "--lambda", "0"]));
    assert_eq!(z["n1"], 9);
    assert_eq!(z["P"], serde_json::json!([1, 1, 7]));
    assert_eq!(z["unit_roots"], 1);
    let smooth = json(&dworklab(&cache, &["scan-smooth", "--p", "7", "--n", "2"]));
    assert_eq!(smooth["smooth"], serde_json::json!([0, 3, 5, 6]));
}

#[test]
fn field_info_describes_the_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&dworklab(&dir.path().join("c.jsonl"), &["field-info", "--p", "5", "--k", "2"]));
    assert_eq!((v["p"].as_u64(), v["k"].as_u64(), v["q"].as_u64()), (Some(5), Some(2), Some(25)));
    assert_eq!(v["modulus"].as_array().unwrap().len(), 3);
}
