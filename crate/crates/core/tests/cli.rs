use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use prefswap::format::{parse_instance, OFFICE_EXAMPLE};
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_prefswap"));
    cmd.env_remove("PREFSWAP_FALSIFY_TRIALS");
    cmd
}

fn run(args: &[&str]) -> (i32, String) {
    let out: Output = bin().args(args).output().unwrap();
    let text = format!(
        "{}{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    (out.status.code().unwrap(), text)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn office(dir: &Path) -> String {
    write(dir, "office.json", OFFICE_EXAMPLE).to_str().unwrap().to_string()
}

#[test]
fn validate_prints_scales() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let (status, out) = run(&["validate", &f]);
    assert_eq!(status, 0);
    assert!(out.contains("Commute  {-50, -15}"));
    assert!(out.contains("Gym      {no gym, gym}"));
    assert!(out.contains("Size     {200, 400}"));
    assert!(out.contains("Cost     {-12000, -5000}"));
}

#[test]
fn validate_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(
        dir.path(),
        "empty.json",
        r#"{"criteria": [{"name": "a", "domain": {"kind": "numeric"}}, {"name": "b", "domain": {"kind": "numeric"}}]}"#,
    );
    let (status, out) = run(&["validate", empty.to_str().unwrap()]);
    assert_eq!(status, 0);
    assert!(out.contains("a  {}"));

    let mismatch = write(
        dir.path(),
        "mismatch.json",
        r#"{"criteria": [{"name": "a", "domain": {"kind": "numeric"}}, {"name": "b", "domain": {"kind": "numeric"}}],
            "statements": [{"better": [1, "*"], "worse": [0, 2]}]}"#,
    );
    let (status, out) = run(&["validate", mismatch.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(out.contains("error"));
}

#[test]
fn validate_payload_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let out = bin().args(["validate", &f, "--json"]).output().unwrap();
    let payload: Value = serde_json::from_slice(&out.stdout).unwrap();
    let back = parse_instance(&payload["instance"].to_string()).unwrap();
    assert_eq!(back, parse_instance(OFFICE_EXAMPLE).unwrap());
}

#[test]
fn check_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let (status, out) = run(&["check", &f, "x", "y", "--certificate"]);
    assert_eq!(status, 0);
    assert!(out.contains("verdict: necessary"));
    assert!(out.contains("covector: (-1, -1, +1, +1)"));
    assert!(out.contains("lambda:"));

    let (status, out) = run(&["check", &f, "e2", "e1"]);
    assert_eq!(status, 1);
    assert!(out.contains("not necessary"));

    let (status, out) = run(&["check", &f, "-60,no gym,450,-5000", "y"]);
    assert_eq!(status, 1);
    assert!(out.contains("unbounded by P"));

    let (status, _) = run(&["check", &f, "nowhere", "y"]);
    assert_eq!(status, 2);
}

#[test]
fn falsifier_trials_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let out = bin()
        .args(["check", &f, "e2", "e1", "--falsify"])
        .env("PREFSWAP_FALSIFY_TRIALS", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("falsifier (7 trials"));
    let (_, out) = run(&["check", &f, "e2", "e1", "--falsify", "--oracle", "6"]);
    assert!(out.contains("falsifier (10000 trials, seed 0): counterexample"));
    assert!(out.contains("integer oracle (B = 6): nothing found"));
}

#[test]
fn explain_reference_policy() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let (status, out) = run(&[
        "explain",
        &f,
        "x",
        "y",
        "--policy",
        "reference",
        "--order",
        "Commute,Gym",
    ]);
    assert_eq!(status, 0);
    let lines: Vec<&str> = out.lines().skip_while(|l| *l != "explanation:").skip(1).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with(">= ([-50], no gym, [400], -5000)"));
    assert!(lines[2].contains("by swap {Cost} >= {Commute}"));
    assert!(lines[3].contains("by swap {Size} >= {Gym}"));
    assert!(lines[4].contains("by dominance"));
}

#[test]
fn explain_negative_and_trivial_cases() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let (status, out) = run(&["explain", &f, "ABCd", "abcD"]);
    assert_eq!(status, 1);
    assert!(out.contains("necessary but no order-2 explanation"));

    let (status, out) = run(&["explain", &f, "e2", "e3"]);
    assert_eq!(status, 0);
    assert_eq!(out.matches("by dominance").count(), 1);

    let (status, _) = run(&["explain", &f, "x", "y", "--order", "Cost"]);
    assert_eq!(status, 2);

    let three = write(
        dir.path(),
        "three.json",
        r#"{"criteria": [{"name": "a", "domain": {"kind": "numeric"}}, {"name": "b", "domain": {"kind": "numeric"}}],
            "statements": [{"better": [2, 0], "worse": [0, 1]}, {"better": [1, 0], "worse": [0, 1]}]}"#,
    );
    let (status, out) = run(&["explain", three.to_str().unwrap(), "2,0", "0,1"]);
    assert_eq!(status, 2);
    assert!(out.contains("shortest"));
}

#[test]
fn delta2_and_dot_exports() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let dot = dir.path().join("swaps.dot");
    let graph = dir.path().join("graph.dot");
    let (status, out) = run(&[
        "delta2",
        &f,
        "--dot",
        dot.to_str().unwrap(),
        "--graph",
        graph.to_str().unwrap(),
        "--reduce",
    ]);
    assert_eq!(status, 0);
    assert!(out.contains("5 edges"));
    let dot = std::fs::read_to_string(dot).unwrap();
    assert_eq!(dot.matches("->").count(), 5);
    let graph = std::fs::read_to_string(graph).unwrap();
    assert!(graph.contains("style=dotted") && graph.contains("black:invis:black") && graph.contains("style=solid"));

    let empty = write(
        dir.path(),
        "empty.json",
        r#"{"criteria": [{"name": "a", "domain": {"kind": "numeric"}}, {"name": "b", "domain": {"kind": "numeric"}}]}"#,
    );
    let (status, out) = run(&["delta2", empty.to_str().unwrap()]);
    assert_eq!(status, 0);
    assert!(out.contains("0 edges"));
}

#[test]
fn worst_case_then_shortest() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("worst.json");
    let (status, _) = run(&["gen-worstcase", "2", f.to_str().unwrap()]);
    assert_eq!(status, 0);
    let (status, out) = run(&["shortest", f.to_str().unwrap(), "x", "y"]);
    assert_eq!(status, 0);
    assert!(out.starts_with("4 steps, 4 swaps"));
    let (status, out) = run(&["shortest", f.to_str().unwrap(), "x", "y", "--budget", "2"]);
    assert_eq!(status, 2);
    assert!(out.contains("budget"));
    let (status, _) = run(&["gen-worstcase", "0"]);
    assert_eq!(status, 2);
}

#[test]
fn oracle_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let (status, out) = run(&["oracle", &f, "x", "y", "--trials", "500"]);
    assert_eq!(status, 0);
    assert!(out.contains("integer oracle (B = 6): found"));
    let (status, out) = run(&["oracle", &f, "e2", "e1", "--trials", "500"]);
    assert_eq!(status, 1);
    assert!(out.contains("counterexample"));
}

#[test]
fn covector_and_scales() {
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let (status, out) = run(&["covector", &f, "x", "y"]);
    assert_eq!(status, 0);
    assert!(out.contains("Gym      [no gym .. gym]:-1"));
    let (status, out) = run(&["scales", &f, "--json"]);
    assert_eq!(status, 0);
    let payload: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(payload["scales"]["Cost"], serde_json::json!(["-12000", "-5000"]));
}

#[test]
fn usage_errors_and_determinism() {
    let (status, _) = run(&["explain"]);
    assert_eq!(status, 2);
    let dir = tempfile::tempdir().unwrap();
    let f = office(dir.path());
    let a = run(&["check", &f, "e2", "e1", "--falsify", "300", "--seed", "5"]);
    let b = run(&["check", &f, "e2", "e1", "--falsify", "300", "--seed", "5"]);
    assert_eq!(a, b);
}
