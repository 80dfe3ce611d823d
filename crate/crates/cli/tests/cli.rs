use std::process::{Command, Output};

use serde_json::Value;

fn intvalmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intvalmat")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_all_passes() {
    let out = intvalmat(&["verify-paper", "--all", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["evidence"].as_array().unwrap().len(), 7);
}

#[test]
fn text_summary() {
    let out = intvalmat(&["--format", "text", "verify-paper", "--case", "example-4.16", "--p", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS example-4.16"), "{text}");
    assert!(text.contains("16 < 18"));
}

#[test]
fn exit_codes() {
    assert_eq!(intvalmat(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(intvalmat(&["construct", "--p", "4"]).status.code(), Some(2));
    let member = intvalmat(&["check", "--expr", "x^2-x", "--den-exp", "1", "--n", "1", "--ring"]);
    assert_eq!(member.status.code(), Some(0));
    let outsider = intvalmat(&["check", "--expr", "x", "--den-exp", "1", "--n", "2", "--closure"]);
    assert_eq!(outsider.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let args = ["check", "--expr", "x^10 - x^9 + 4x^8 - 2x^7 + 8x^6 - 2x^5 + 7x^4 - 7x^3 - 2x^2 - 6x", "--den-exp", "2", "--proper"];
    let one = intvalmat(&args);
    let many = intvalmat(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(json(&one)["pass"], true);
}
