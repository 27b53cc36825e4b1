use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const GAUSS: &str = r#"{"kind":"gaussian","a":1}"#;
const INDICATOR: &str = r#"{"kind":"indicator","lo":-1,"hi":1}"#;
const P2: &str = r#"{"kind":"constant","value":2}"#;

fn vexlp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vexlp"))
        .args(args)
        .env_remove("VEXLP_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn norm_of_gaussian() {
    let out = vexlp(&["norm", "--function", GAUSS, "--exponent", P2]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out)["value"].as_f64().unwrap();
    assert!((v - std::f64::consts::FRAC_PI_2.powf(0.25)).abs() < 1e-7);
}

#[test]
fn psi_csv_on_stdout() {
    let out = vexlp(&["psi", "--function", INDICATOR, "--s", "0.5,1,2", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("s,re,im,error\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn schema_errors_exit_two() {
    let out = vexlp(&["norm", "--function", r#"{"kind":"gaussian"}"#, "--exponent", P2]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "invalid-input");
}

#[test]
fn unknown_kernel_exits_two() {
    let out = vexlp(&[
        "invert",
        "--function",
        GAUSS,
        "--exponent",
        P2,
        "--kernel",
        "box",
        "--a-seq",
        "1,0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_inversion_gate_exits_one() {
    // Two coarse scales cannot bring the jump error below the gate.
    let out = vexlp(&[
        "invert",
        "--function",
        INDICATOR,
        "--exponent",
        P2,
        "--kernel",
        "gauss-weierstrass",
        "--a-seq",
        "1,0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn unreachable_tolerance_exits_three() {
    let out = vexlp(&["psi", "--function", INDICATOR, "--s", "1e12", "--tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["exit_code"], 3);
}

#[test]
fn bad_env_tolerance() {
    let out = Command::new(env!("CARGO_BIN_EXE_vexlp"))
        .args(["norm", "--function", GAUSS, "--exponent", P2])
        .env("VEXLP_TOL", "tiny")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("out.json");
    let csv_path = dir.path().join("out.csv");
    let config = serde_json::json!({
        "operation": {
            "op": "invert",
            "function": serde_json::from_str::<Value>(GAUSS).unwrap(),
            "exponent": serde_json::from_str::<Value>(P2).unwrap(),
            "kernel": "gauss-weierstrass",
            "a_seq": [1, 0.5, 0.25, 0.125, 0.0625],
        },
        "tol": 1e-8,
        "output": { "json": json_path, "csv": csv_path },
    });
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, config.to_string()).unwrap();
    let out = vexlp(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let written: Value = serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(written, json(&out));
    assert_eq!(written["norms"].as_array().unwrap().len(), 5);
    assert_eq!(fs::read_to_string(&csv_path).unwrap().lines().count(), 6);
}

#[test]
fn csv_out_rejected_without_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let out = vexlp(&[
        "norm",
        "--function",
        GAUSS,
        "--exponent",
        P2,
        "--csv-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_certificate_passes() {
    let out = vexlp(&[
        "bounds",
        "--function",
        GAUSS,
        "--exponent",
        P2,
        "--grid",
        r#"{"kind":"log","lo":0.01,"hi":100,"n":9}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}
