use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formdual")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn spectrum_of_theta8_on_three_forms() {
    let out = run(&["spectrum", "--form", "theta8", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["min_poly"], serde_json::json!(["-8/3", "10/3", "1/1"]));
    assert_eq!(v["order"], 2);
    assert_eq!(v["perfect"], true);
    assert_eq!(v["trace_zero"], true);
    let dims: Vec<u64> = v["eigen"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [8, 48]);
}

#[test]
fn spectrum_against_suite_expectation() {
    let out = run(&["spectrum", "--form", "theta7bar", "--k", "3", "--expect-suite"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["expectation"]["pass"], true);
    // no expectation recorded for this pair
    assert_eq!(run(&["spectrum", "--form", "z8", "--k", "2", "--expect-suite"]).status.code(), Some(2));
}

#[test]
fn operator_json_shape() {
    let out = run(&["operator", "--form", "z8", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(28), Some(28)));
    assert_eq!(v["D"], 8);
    assert_eq!(v["kappa"], "1/1");
    let op = formdual::LinearOperator::from_json_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(op.trace().unwrap() == formdual::scalar::q(0));
}

#[test]
fn operator_to_file() {
    let path = std::env::temp_dir().join(format!("formdual-op-{}.json", std::process::id()));
    let out = run(&["operator", "--form", "theta7bar", "--k", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let op = formdual::LinearOperator::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(op.matrix.rows(), 21);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn catalog_listing_and_dump() {
    let out = run(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("theta8 ") && l.contains(" 14 ")));
    let dump = run(&["catalog", "--dump", "theta7"]);
    let f = formdual::KForm::from_json_str(&String::from_utf8(dump.stdout).unwrap()).unwrap();
    assert_eq!(f, formdual::catalog::g2_three_form());
}

#[test]
fn lift_emits_dual_lift() {
    let out = run(&["lift", "--form", "theta8", "--to", "10", "--dual"]);
    let v = json(&out);
    assert_eq!((v["D"].as_u64(), v["k"].as_u64()), (Some(10), Some(6)));
    let trivial = json(&run(&["lift", "--form", "theta8", "--to", "10"]));
    assert_eq!(trivial["k"], 4);
}

#[test]
fn z8_report() {
    let v = json(&run(&["z8", "--k", "3"]));
    assert_eq!(v["k"], 3);
    assert_eq!(v["scale"], "1/2");
    assert!(v["sigma"].as_array().unwrap().len() >= 5);
    assert!(v["spectrum"]["min_poly"].is_array());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["spectrum", "--form", "nope", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["operator", "--form", "theta8"]).status.code(), Some(2));
    assert_eq!(run(&["z8", "--k", "7"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes_follow_the_outcome() {
    let out = run(&["verify", "--suite", "g2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("suite g2: 5 checks, 0 failed -> PASS"));
    // the quaternionic positivity statement does not hold
    let out = run(&["verify", "--suite", "quaternionic", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["failed"], 2);
}

#[test]
fn verify_json_is_deterministic() {
    let a = run(&["verify", "--suite", "complex", "--format", "json"]);
    let b = run(&["verify", "--suite", "complex", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["pass"], true);
}
