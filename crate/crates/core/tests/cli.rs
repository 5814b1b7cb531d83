use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclepoly"))
        .args(args)
        .output()
        .unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (code, v)
}

fn coefficients(v: &Value) -> Vec<(String, String)> {
    v["polynomial"]["coefficients"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(d, c)| (d.clone(), c.as_str().unwrap().to_string()))
        .collect()
}

fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
    items
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

#[test]
fn poly_of_a_tree() {
    let (code, v) = run_json(&[
        "poly",
        "--graph",
        &data("path4.graph"),
        "--method",
        "subgraph",
    ]);
    assert_eq!(code, 0);
    // k(k-1)^3
    assert_eq!(
        coefficients(&v),
        pairs(&[("1", "-1"), ("2", "3"), ("3", "-3"), ("4", "1")])
    );
    assert_eq!(v["polynomial"]["degree"], 4);
}

#[test]
fn every_method_gives_the_same_polynomial() {
    let graph = data("c5.graph");
    let f = data("c5_z3.f");
    let reference = run_json(&["poly", "--graph", &graph, "--group", "Z3", "--f", &f]).1;
    for method in ["delcon", "broken", "bond", "decompose"] {
        let (code, v) = run_json(&[
            "poly", "--graph", &graph, "--group", "Z3", "--f", &f, "--method", method,
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["polynomial"], reference["polynomial"], "{method}");
        assert!(v.get("warning").is_none());
    }
}

#[test]
fn verify_on_a_five_cycle() {
    let (code, v) = run_json(&[
        "verify",
        "--graph",
        &data("c5.graph"),
        "--group",
        "Z3",
        "--f",
        &data("c5_z3.f"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["count"], 33);
    for check in v["checks"].as_array().unwrap() {
        assert_eq!(check["status"], "pass", "{check}");
    }
}

#[test]
fn verify_flags_an_inconsistent_assigning() {
    let out = run(&[
        "verify",
        "--graph",
        &data("theta.graph"),
        "--assigning",
        &data("theta_inconsistent.assigning"),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let statuses: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"skipped"));
}

#[test]
fn certified_assigning_file() {
    let (code, v) = run_json(&[
        "poly",
        "--graph",
        &data("theta.graph"),
        "--assigning",
        &data("theta_one_zero.assigning"),
        "--method",
        "broken",
    ]);
    assert_eq!(code, 0);
    assert!(v.get("warning").is_none());
    let (_, subgraph) = run_json(&[
        "poly",
        "--graph",
        &data("theta.graph"),
        "--assigning",
        &data("theta_one_zero.assigning"),
    ]);
    assert_eq!(v["polynomial"], subgraph["polynomial"]);
}

#[test]
fn uncertified_assigning_warns_for_broken_method() {
    let (code, v) = run_json(&[
        "poly",
        "--graph",
        &data("theta.graph"),
        "--assigning",
        &data("theta_inconsistent.assigning"),
        "--method",
        "bond",
    ]);
    assert_eq!(code, 0);
    assert!(v["warning"].as_str().unwrap().contains("admissible"));
}

#[test]
fn count_with_a_zero_loop() {
    let (code, v) = run_json(&[
        "count",
        "--graph",
        &data("loop.graph"),
        "--group",
        "Z3",
        "--f",
        &data("loop_zero.f"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["colorings"], 0);
    assert_eq!(v["tensions"], 0);
}

#[test]
fn tau_with_negative_evaluation() {
    let (code, v) = run_json(&["tau", "--graph", &data("c5.graph"), "--eval", "-1"]);
    assert_eq!(code, 0);
    // ((k-1)^5 - (k-1)) / k at k = -1
    assert_eq!(v["evaluation"]["value"], "30");
    assert_eq!(v["quantity"], "tau");
}

#[test]
fn cycles_bonds_and_induced() {
    let (_, v) = run_json(&["cycles", "--graph", &data("theta.graph")]);
    assert_eq!(v["count"], 3);
    assert_eq!(v["cycles"][2]["edges"], serde_json::json!([1, 2, 3, 4]));
    let (_, v) = run_json(&["bonds", "--graph", &data("path4.graph")]);
    assert_eq!(v["bonds"], serde_json::json!([[0], [1], [2]]));
    let (_, v) = run_json(&[
        "induced",
        "--graph",
        &data("c5.graph"),
        "--group",
        "Z3",
        "--f",
        &data("c5_z3.f"),
    ]);
    assert_eq!(v["assigning"][0]["value"], 1);
}

#[test]
fn custom_order_is_accepted() {
    let args = [
        "poly",
        "--graph",
        &data("theta.graph"),
        "--method",
        "broken",
        "--order",
        "e4,e3,e2,e1,e0",
    ];
    let (code, v) = run_json(&args);
    assert_eq!(code, 0);
    let (_, reference) = run_json(&["poly", "--graph", &data("theta.graph")]);
    assert_eq!(v["polynomial"], reference["polynomial"]);
    let out = run(&["poly", "--graph", &data("theta.graph"), "--order", "e0,e0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--graph",
        &data("c5.graph"),
        "--group",
        "Z3",
        "--f",
        &data("c5_z3.f"),
        "--json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let missing = run(&["poly", "--graph", &data("missing.graph")]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.graph"));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["poly"]).status.code(), Some(1));
    assert_eq!(
        run(&["count", "--graph", &data("c5.graph")]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["poly", "--graph", &data("c5.graph"), "--method", "fast"])
            .status
            .code(),
        Some(1)
    );

    let budget = run(&[
        "count",
        "--graph",
        &data("c5.graph"),
        "--group",
        "Z3",
        "--f",
        &data("c5_z3.f"),
        "--budget",
        "10",
    ]);
    assert_eq!(budget.status.code(), Some(2));
    assert!(budget.stdout.is_empty());
}
