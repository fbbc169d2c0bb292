use std::process::{Command, Output};

use serde_json::Value;

const V1: &str = "13231 31231 31213 32123 31213 13213 13231 12321 13231";
const V2: &str = "13231 12321 13231 31231 31213 32123 31213 13213 13231";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rexcalc")).args(args).env_remove("REXCALC_BUDGET").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn terms(v: &Value) -> Vec<(String, String)> {
    let mut t: Vec<(String, String)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["mask"].as_str().unwrap().to_string(), t["coeff"].as_str().unwrap().to_string()))
        .collect();
    t.sort();
    t
}

fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut t: Vec<(String, String)> = items.iter().map(|&(m, c)| (m.to_string(), c.to_string())).collect();
    t.sort();
    t
}

#[test]
fn graph_views() {
    let v = json(&["graph", "12321", "--format", "json"]);
    assert_eq!(v["schema"], "rexcalc/graph@1");
    assert_eq!(v["graph"], "expanded");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);

    let v = json(&["graph", "12321", "--conflated", "--format", "json"]);
    assert_eq!(v["clouds"].as_array().unwrap().len(), 3);
    assert_eq!(v["source"], "12321");

    let dot = run(&["graph", "246", "--format", "dot"]);
    assert!(dot.status.success());
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("digraph"));

    let text = run(&["graph", "121321"]);
    assert!(String::from_utf8(text.stdout).unwrap().starts_with("expanded graph: 16 vertices"));
}

#[test]
fn bad_words_are_usage_errors() {
    assert_eq!(run(&["graph", "11"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "1a"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "13231", "--element", "1|1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "zam", "--rank", "7"]).status.code(), Some(2));
}

#[test]
fn eval_counterexample_paths() {
    let x = "1|1|1|x3|1|1";
    let a = json(&["eval", "13231", "--path", V1, "--element", x]);
    let b = json(&["eval", "13231", "--path", V2, "--element", x]);
    assert_eq!(a["schema"], "rexcalc/element@1");
    let input = json(&["eval", "13231", "--element", x]);
    // 1⊗1⊗1⊗x3⊗1⊗1 in normal form; the second path fixes it
    assert_eq!(terms(&input), pairs(&[("00000", "x1 + x2"), ("10000", "-1"), ("01000", "1"), ("00100", "-1")]));
    assert_eq!(terms(&b), terms(&input));
    // 1⊗x2⊗1⊗1⊗1⊗1
    assert_eq!(terms(&a), pairs(&[("00000", "x1 + x2"), ("10000", "-1")]));
    assert_eq!(terms(&a), terms(&json(&["eval", "13231", "--element", "1|x2|1|1|1|1"])));
}

#[test]
fn eval_edge_cases() {
    let echo = json(&["eval", "121", "--element", "x1|1|1|1"]);
    assert_eq!(terms(&echo), pairs(&[("000", "x1")]));

    let up = json(&["eval", "121", "--path", "121 -> 212", "--element", "1|x1|1|1"]);
    assert_eq!(up["word"], "212");
    // (x1 + x2)·1 - 1⊗1⊗1⊗x3 in normal form
    assert_eq!(terms(&up), pairs(&[("000", "-x3"), ("010", "1"), ("001", "1")]));

    let conflated = json(&["eval", "12321", "--conflated", "--path", "s c t", "--matrix"]);
    assert_eq!(conflated["schema"], "rexcalc/matrix@1");
    assert_eq!(conflated["domain"], "12321");
    assert_eq!(conflated["codomain"], "32123");
}

#[test]
fn suites_exit_zero() {
    for args in [
        &["verify", "fpc-s4"][..],
        &["verify", "zam", "--rank", "3"],
        &["verify", "lemmas"],
        &["verify", "family"],
        &["verify", "counterexample"],
        &["verify", "refined", "--rank", "4", "--max-len", "10"],
        &["verify", "fpc", "--element", "12321"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn report_schema() {
    let v = json(&["verify", "fpc", "--element", "12321", "--format", "json"]);
    assert_eq!(v["schema"], "rexcalc/report@1");
    assert_eq!(v["suite"], "fpc");
    assert_eq!(v["result"]["result"], "counterexample");
    assert_eq!(v["result"]["counterexample"]["first"].as_array().unwrap().len(), 5);

    let v = json(&["verify", "fpc-s4", "--format", "json"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"].as_array().unwrap().len(), 24);
}

#[test]
fn budget_exhaustion() {
    let out = Command::new(env!("CARGO_BIN_EXE_rexcalc"))
        .args(["verify", "fpc-s4"])
        .env("REXCALC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    // the flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_rexcalc"))
        .args(["verify", "zam", "--rank", "3", "--budget", "1000"])
        .env("REXCALC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["verify", "fpc", "--element", "12321", "--budget", "5"]).status.code(), Some(3));
}
