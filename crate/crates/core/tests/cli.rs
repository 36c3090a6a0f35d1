//! End-to-end tests of the command-line interface: output contents,
//! formats, exit codes, determinism.

use std::process::{Command, Output};

fn starlike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starlike"))
        .args(args)
        .output()
        .expect("failed to launch binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn coeffs_eps_table() {
    let out = starlike(&["coeffs", "--family", "eps", "--count", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for expected in ["k=1", "k=6", "44", "-4"] {
        assert!(text.contains(expected), "missing {expected} in:\n{text}");
    }
}

#[test]
fn coeffs_json_and_csv_agree() {
    let json_out = starlike(&[
        "coeffs", "--family", "pi", "--count", "4", "--format", "json",
    ]);
    assert!(json_out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["exact"], "7/32");

    let csv_out = starlike(&[
        "coeffs", "--family", "pi", "--count", "4", "--format", "csv",
    ]);
    assert!(csv_out.status.success());
    let csv_text = stdout(&csv_out);
    let mut lines = csv_text.lines();
    assert_eq!(lines.next().unwrap(), "k,exact,decimal");
    let second = lines.nth(1).unwrap(); // row for k = 2
    assert!(second.starts_with("2,7/32,"));
    // identical numeric strings across formats
    let json_dec = rows[1]["decimal"].as_str().unwrap();
    assert!(second.ends_with(json_dec));
}

#[test]
fn sigma_coefficient_and_sum() {
    let out = starlike(&["sigma", "--k", "2", "--m", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1/16"));

    let out = starlike(&["sigma", "--k", "1", "--nu", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1/8"));
    assert!(text.contains("bound = 1/4"));
    assert!(text.contains("satisfied=true"));
}

#[test]
fn sigma_pole_exits_3() {
    let out = starlike(&["sigma", "--k", "1", "--nu", "-1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pole"));
}

#[test]
fn usage_error_exits_2() {
    let out = starlike(&["coeffs", "--family", "nonsense", "--count", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // neither --m nor --nu
    let out = starlike(&["sigma", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // both at once
    let out = starlike(&["sigma", "--k", "2", "--m", "1", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed nu
    let out = starlike(&["radius", "--family", "phi", "--nu", "x/y", "--order", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn radius_phi_exact_truncation() {
    let out = starlike(&["radius", "--family", "phi", "--nu", "10", "--order", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("126208/3125"));
    assert!(text.contains("40.38656"));
}

#[test]
fn radius_varphi_truncation() {
    let out = starlike(&["radius", "--family", "varphi", "--nu", "8", "--order", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4.138671875"));
}

#[test]
fn radius_numeric_comparison() {
    let out = starlike(&[
        "radius",
        "--family",
        "phi",
        "--nu",
        "10",
        "--order",
        "6",
        "--numeric",
        "--prec",
        "96",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("numeric"));
    // |40.38656 - 40.386085...| ~ 4.7e-4
    assert!(text.contains("abs_error  = 0.000475") || text.contains("abs_error  = 0.000474"));
}

#[test]
fn zeros_of_half_integer_order() {
    let out = starlike(&["zeros", "--nu", "0.5", "--count", "2", "--prec", "64"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("3.141592653589793"));
    assert!(text.contains("6.283185307179586"));
}

#[test]
fn verify_small_grid_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = starlike(&[
        "verify",
        "--family",
        "phi",
        "--grid",
        "10,20",
        "--orders",
        "1,2",
        "--prec",
        "96",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("verification passed"));
    assert!(text.contains("order  1"));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["meta"]["family"], "phi");
    assert_eq!(report["rows"].as_array().unwrap().len(), 4);
    assert_eq!(report["slopes"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_reads_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(
        &cfg_path,
        r#"{ "family": "varphi-sq", "grid": ["10", "20"], "orders": [1], "precision_bits": 96 }"#,
    )
    .unwrap();
    // flag overrides the file's orders
    let out = starlike(&[
        "verify",
        "--config",
        cfg_path.to_str().unwrap(),
        "--orders",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("nu,order,asymptotic,numeric,abs_error,scaled_error"));
    assert!(text.contains("\n10,2,") || text.contains("10,2,"));
    assert!(!text.contains("10,1,"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "verify", "--family", "phi", "--grid", "10,20", "--orders", "1", "--prec", "96",
    ];
    let a = starlike(&args);
    let b = starlike(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn out_flag_writes_table_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.csv");
    let out = starlike(&[
        "coeffs",
        "--family",
        "delta",
        "--count",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("k,exact,decimal"));
    assert!(written.contains("1,-1,-1"));
}
