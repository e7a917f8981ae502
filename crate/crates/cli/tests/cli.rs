use std::process::{Command, Output};

use serde_json::Value;

fn ambiclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambiclass"))
        .args(args)
        .env_remove("AMBICLASS_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = ambiclass(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn genclass_for_82() {
    let v = json(&["genclass", "-d", "82", "--primes", "3"]);
    assert_eq!(v["result"]["generates"], true);
    assert_eq!(v["certificates"]["oracle_generates"], true);
    assert_eq!(v["input"]["field"]["discriminant"], 328);
    let v = json(&["genclass", "-d", "328", "--primes", "23"]);
    assert_eq!(v["result"]["generates"], false);
}

#[test]
fn filtration_for_82() {
    let v = json(&["filtration", "-d", "82"]);
    assert_eq!(v["result"]["orders"], serde_json::json!([2, 2]));
    assert_eq!(v["result"]["structure"], serde_json::json!([4]));
    assert_eq!(v["certificates"]["oracle_structure"], serde_json::json!([4]));
}

#[test]
fn structure_from_divisors() {
    let v = json(&["structure", "--p", "3", "--divisors", "3"]);
    assert_eq!(v["result"]["groups"], serde_json::json!([[9, 3]]));
    let v = json(&["structure", "--p", "3", "--nontrivial-norm", "3"]);
    assert_eq!(v["result"]["groups"], serde_json::json!([[3, 3, 3], [9, 3]]));
}

#[test]
fn norm_certificates() {
    let v = json(&["hasse-symbol", "-d", "82", "--x", "3", "--place", "41"]);
    assert_eq!(v["result"]["symbol"], -1);
    assert_eq!(v["certificates"]["associate"]["unit"], 249);
    let v = json(&["solve-norm", "-d", "82", "--x", "23"]);
    assert_eq!(v["certificates"]["solution_norm"], "23");
    assert_eq!(v["certificates"]["integral_solution"], Value::Null);
    let v = json(&["solve-norm", "-d", "82", "--x", "81"]);
    assert!(v["certificates"]["integral_solution"].is_string());
    let v = json(&["is-norm", "-d", "82", "--x", "3"]);
    assert_eq!(v["result"]["is_norm"], false);
    assert_eq!(v["certificates"]["symbols"]["2"], -1);
}

#[test]
fn every_report_has_the_envelope_and_round_trips() {
    let cases: &[&[&str]] = &[
        &["class-group", "-d", "-47"],
        &["ambiguous", "-d", "-84", "--sense", "ordinary"],
        &["redei", "-d", "-84"],
        &["simulate", "--p", "3", "--divisors", "1,2"],
        &["bernoulli", "-d", "-23"],
        &["stickelberger", "--m", "7"],
        &["mwk-check", "-d", "-47", "--p", "5"],
        &["admissible", "-d", "-23", "--bound", "100"],
    ];
    for args in cases {
        let v = json(args);
        for key in ["input", "result", "certificates", "references"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(ambiclass(&["genclass", "-d", "82", "--primes", "7"]).status.code(), Some(2));
    assert_eq!(ambiclass(&["class-group", "-d", "4"]).status.code(), Some(2));
    assert_eq!(ambiclass(&["mwk-check", "-d", "-3", "--p", "3"]).status.code(), Some(2));
    assert_eq!(ambiclass(&["class-group", "--bogus"]).status.code(), Some(64));
    assert_eq!(ambiclass(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(ambiclass(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "2", "4"] {
        let path = dir.path().join(format!("rows-{threads}.jsonl"));
        let out = ambiclass(&[
            "sweep", "--check", "filtration", "--from", "-400", "--to", "400", "--threads", threads,
            "--json", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
        outputs.push(out.stdout);
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let text = String::from_utf8(outputs.pop().unwrap()).unwrap();
    let summary: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["failed"], serde_json::json!([]));
    assert!(summary["total"].as_u64().unwrap() > 200);
}

#[test]
fn sweep_reads_threads_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ambiclass"))
        .args(["sweep", "--check", "chevalley", "--from", "-50", "--to", "50"])
        .env("AMBICLASS_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("passed\n"));
    let bad = Command::new(env!("CARGO_BIN_EXE_ambiclass"))
        .args(["sweep", "--check", "chevalley", "--from", "-5", "--to", "5"])
        .env("AMBICLASS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
}
