use std::process::{Command, Output};

use serde_json::Value;

fn lss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lss"))
        .args(args)
        .env_remove("LSS_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = lss(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn sets(report: &Value) -> Vec<Vec<u64>> {
    report["minimal_primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["S"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect())
        .collect()
}

#[test]
fn gb_triangle() {
    let r = json(&["gb", "--graph", "cycle:3", "--field", "Q"]);
    assert_eq!(r["elements"].as_array().unwrap().len(), 7);
    for flag in ["is_gb", "reduced_match", "initial_squarefree"] {
        assert_eq!(r["certificate"][flag], true);
    }
}

#[test]
fn gb_path_is_generators() {
    let r = json(&["gb", "--graph", "path:3"]);
    let polys: Vec<&str> = r["elements"].as_array().unwrap().iter().map(|e| e["poly"].as_str().unwrap()).collect();
    assert_eq!(polys, ["x1*y2 + x2*y1", "x2*y3 + x3*y2"]);
}

#[test]
fn gb_char_two_skips_certification() {
    let r = json(&["gb", "--graph", "cycle:4", "--field", "F2"]);
    assert!(r["certificate"].is_null());
    assert!(r["note"].as_str().unwrap().contains("char 2"));
}

#[test]
fn decompose_fig3() {
    let r = json(&["decompose", "--graph", "fig3"]);
    let s = sets(&r);
    for want in [vec![4], vec![4, 5], vec![2, 6]] {
        assert!(s.contains(&want));
    }
    assert!(!s.contains(&vec![3, 7]));
}

#[test]
fn invariants_examples() {
    let r = json(&["invariants", "--graph", "butterfly"]);
    assert_eq!((r["dim"]["value"].as_u64(), r["n"].as_u64(), r["b"].as_u64()), (Some(6), Some(5), Some(0)));
    let r = json(&["invariants", "--graph", "complete:4"]);
    assert_eq!(r["unmixed"]["value"], false);
    let r = json(&["invariants", "--graph", "cycle:3", "--field", "Fp:5"]);
    assert_eq!(r["dim"]["status"], "hypothesis_violated");
}

#[test]
fn decompose_with_verification() {
    let r = json(&["decompose", "--graph", "cycle:3", "--verify"]);
    assert_eq!(r["verified"], true);
    let out = lss(&["decompose", "--graph", "cycle:5", "--verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_json_input() {
    let r = json(&["invariants", "--graph", r#"{"n": 4, "edges": [[1, 2], [3, 4]]}"#]);
    assert_eq!(r["prime"]["value"], true);
    let dir = std::env::temp_dir().join(format!("lss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    std::fs::write(&path, r#"{"n": 3, "edges": [[1, 2], [1, 3], [2, 3]]}"#).unwrap();
    let r = json(&["invariants", "--graph", path.to_str().unwrap()]);
    assert_eq!(r["minimal_prime_count"], 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn suites() {
    for args in [
        vec!["verify", "--suite", "char2"],
        vec!["verify", "--suite", "ikn", "--n-max", "4"],
        vec!["verify", "--suite", "variety", "--n-max", "3", "--seeds", "3", "--jobs", "2"],
    ] {
        let out = lss(&args);
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(out.status.success(), "{args:?}: {text}");
        assert!(text.lines().all(|l| l.starts_with("[PASS]")), "{text}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["decompose", "--graph", "fig3", "--format", "json"];
    assert_eq!(lss(&args).stdout, lss(&args).stdout);
    let args = ["gb", "--graph", "complete:4", "--format", "json"];
    assert_eq!(lss(&args).stdout, lss(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(lss(&["gb", "--graph", "nonsense"]).status.code(), Some(2));
    assert_eq!(lss(&["gb", "--graph", "cycle:3", "--field", "F4"]).status.code(), Some(2));
    assert_eq!(lss(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(lss(&["gb", "--graph", "cycle:3", "--budget", "1"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_lss"))
        .args(["gb", "--graph", "cycle:3"])
        .env("LSS_BUDGET", "2,100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exhausted"));
}

#[test]
fn groebner_command() {
    let ideal = r#"{"ring": {"n": 1, "field": "Q"}, "gens": ["x1^2 + y1^2", "x1*y1"]}"#;
    let r = json(&["groebner", "--ideal", ideal]);
    assert_eq!(r["gens"], serde_json::json!(["x1^2 + y1^2", "x1*y1", "y1^3"]));
    assert_eq!(r["order"], serde_json::json!(["x1", "y1"]));
    let r = json(&["groebner", "--ideal", ideal, "--order", "y1,x1"]);
    assert_eq!(r["order"], serde_json::json!(["y1", "x1"]));
    assert_eq!(r["gens"], serde_json::json!(["x1^2 + y1^2", "x1*y1", "x1^3"]));
}

#[test]
fn sample_command() {
    let r = json(&["sample", "--graph", "path:3", "--set", "2", "--seed", "5"]);
    assert_eq!(r["S"], serde_json::json!([2]));
    assert_eq!(r["assignment"]["2"], serde_json::json!(["0", "0"]));
    assert_eq!(r["vanishes"], true);
    assert_eq!(lss(&["sample", "--graph", "path:3", "--set", "7"]).status.code(), Some(2));
}
