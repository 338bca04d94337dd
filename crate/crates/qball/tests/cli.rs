//! End-to-end checks of the command-line interface: output formats, exit
//! codes, and report determinism.

use std::process::{Command, Output};

fn qball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qball"))
        .args(args)
        .output()
        .expect("spawn qball")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn graph_emits_canonical_json() {
    let out = qball(&["graph", "--n", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);

    let out = qball(&["graph", "--n", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn graph_rejects_n_zero() {
    let out = qball(&["graph", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paths_manifest_order_and_count() {
    let out = qball(&["paths", "--n", "2", "--cutoff", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    assert_eq!(lines[0], "v0");
    assert!(lines.contains(&"a^0 c b^0 e"));
}

#[test]
fn verify_passes_and_is_byte_identical() {
    let args = ["verify", "--n", "1", "--q", "0.5", "--cutoff", "6", "--tol", "1e-12"];
    let a = qball(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = qball(&args);
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    for check in v["checks"].as_array().unwrap() {
        assert!(check["pass"].as_bool().unwrap(), "{}", check["id"]);
    }
}

#[test]
fn verify_rejects_bad_q() {
    let out = qball(&["verify", "--q", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_fails_with_impossible_tolerance() {
    // Nothing is wrong with the algebra; a sub-epsilon tolerance simply
    // marks nonzero roundoff as failure and must yield exit code 1.
    let out = qball(&["verify", "--n", "2", "--cutoff", "4", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(false));
}

#[test]
fn reduce_normal_forms() {
    let out = qball(&["reduce", "--n", "1", "S[e]* S[e]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "P[v0]\n");

    let out = qball(&["reduce", "--n", "2", "S[b] S[b]* S[e]"]);
    assert_eq!(stdout(&out), "0\n");

    let out = qball(&["reduce", "--n", "1", ""]);
    assert_eq!(stdout(&out), "P[v0] + P[v1]\n");
}

#[test]
fn reduce_parse_error_exits_2() {
    let out = qball(&["reduce", "--n", "1", "S[e"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte"), "error should carry a position: {err}");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("qball-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("graph.json");
    let out = qball(&["graph", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"vertices\""));
}
