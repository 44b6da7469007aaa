//! End-to-end runs of the `ezl` binary: exit codes, output formats, determinism.

use serde_json::Value;
use std::process::{Command, Output};

fn ezl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ezl")).args(args).env_remove("EZL_DIGITS").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn re(v: &Value) -> f64 {
    v[0].as_str().expect("decimal string").parse().unwrap()
}

#[test]
fn eval_in_the_domain() {
    let out = ezl(&["eval", "--point", "1,2", "--method", "series"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["method"], "series");
    assert!(v["value"][0].as_str().unwrap().starts_with("1.202056903159594285399738161"));
}

#[test]
fn auto_switches_to_mellin_barnes() {
    let out = ezl(&["eval", "--point", "0.5+0.3i,-0.25"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["method"], "mb");
}

#[test]
fn exit_codes() {
    // singular hyperplane
    assert_eq!(ezl(&["eval", "--point", "1,1"]).status.code(), Some(2));
    // series outside its domain
    assert_eq!(ezl(&["eval", "--point", "2,0.5", "--method", "series"]).status.code(), Some(2));
    // malformed input
    assert_eq!(ezl(&["eval", "--point", "1,abc"]).status.code(), Some(64));
    assert_eq!(ezl(&["eval"]).status.code(), Some(64));
    assert_eq!(ezl(&["expand", "--point", "1,1", "--order", "99"]).status.code(), Some(64));
    assert_eq!(ezl(&["--format", "csv", "eval", "--point", "2,3"]).status.code(), Some(64));
    // precision beyond the arithmetic
    assert_eq!(ezl(&["--digits", "40", "eval", "--point", "2,3"]).status.code(), Some(3));
    assert_eq!(ezl(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["stieltjes", "--depth", "2", "--order", "3"];
    let (a, b) = (ezl(&args), ezl(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["constants"].as_object().unwrap().len(), 10);
}

#[test]
fn digits_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ezl"))
        .args(["eval", "--point", "2,3"])
        .env("EZL_DIGITS", "18")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let digits = json(&out)["value"][0].as_str().unwrap().trim_start_matches("0.").len();
    assert!(digits <= 19, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn expansion_json_matches_evaluation() {
    let out = ezl(&["expand", "--point", "2,1,1", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let e = ezeta::expansion::LaurentExpansion::from_json(&json(&out)).unwrap();
    let s: Vec<ezeta::Cdd> = [(2.01, 0.0), (1.0, 0.01), (0.99, 0.0)].iter().map(|&(a, b)| ezeta::Cdd::from_f64(a, b)).collect();
    let v = ezl(&["eval", "--point", "2.01,1+0.01i,0.99"]);
    let want = re(&json(&v)["value"]);
    assert!((e.evaluate(&s).re.to_f64() - want).abs() < 1e-8 * want.abs(), "{} vs {want}", e.evaluate(&s));
}

#[test]
fn csv_and_text_tables() {
    let out = ezl(&["--format", "csv", "restricted", "--point", "1,1", "--order", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("multi_index,re,im"));
    assert!(lines.next().unwrap().starts_with("\"-2\",0.5"));
    let out = ezl(&["--format", "text", "stieltjes", "--index", "0"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("γ_0 = 0.5772156649015328606065120900"));
}

#[test]
fn limits_and_indeterminacy() {
    let out = ezl(&["limits", "--point", "0,0", "--eps", "1e-9,1e-9", "--corollary"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((re(&json(&out)["total"]) - 0.375).abs() < 1e-6);
    let out = ezl(&["limits", "--point", "1,0,1", "--eps", "1e-4,1e-4,1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["indeterminate"], true);
    assert_eq!(ezl(&["limits", "--point", "0,0", "--eps", "1e-3"]).status.code(), Some(64));
}

#[test]
fn verify_suite_runs() {
    let out = ezl(&["verify", "stuffle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    assert_eq!(ezl(&["verify", "bogus"]).status.code(), Some(64));
}
