//! End-to-end tests of the binary: exit codes, report shape, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplex-absorb"))
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("simplex-absorb-test-{name}"));
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

const STD2: &str = r#"{"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}"#;
const DEGENERATE: &str = r#"{"dim": 2, "vertices": [[0,0],[1,1],[2,2]]}"#;
const BALL: &str = r#"{"kind": "ball"}"#;
const CUBE: &str = r#"{"kind": "unit_cube"}"#;

#[test]
fn info_reports_standard_simplex_metrics() {
    let simplex = write_temp("info.json", STD2);
    let out = bin().args(["info", "--simplex"]).arg(&simplex).output().unwrap();
    let report = stdout_json(&out);
    assert_eq!(report["command"], "info");
    assert_eq!(report["mode"], "float");
    let results = &report["results"];
    let r = results["inradius"].as_f64().unwrap();
    assert!((r - 0.2928932188134525).abs() < 1e-9);
    assert!((results["volume"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(results["regular"], false);
    assert!(report["input_digest"].as_str().unwrap().len() == 64);
}

#[test]
fn absorb_matches_known_ball_values() {
    let simplex = write_temp("absorb-s.json", STD2);
    let body = write_temp("absorb-b.json", BALL);
    let out = bin()
        .args(["absorb", "--simplex"])
        .arg(&simplex)
        .arg("--body")
        .arg(&body)
        .output()
        .unwrap();
    let report = stdout_json(&out);
    let xi = report["results"]["xi"]["value"].as_f64().unwrap();
    let alpha = report["results"]["alpha"]["value"].as_f64().unwrap();
    assert!((xi - 4.0).abs() < 1e-9);
    assert!((alpha - (2.0 + 2.0f64.sqrt())).abs() < 1e-9);
}

#[test]
fn rational_mode_reports_exact_fractions() {
    let simplex = write_temp("rational-s.json", STD2);
    let body = write_temp("rational-b.json", CUBE);
    let out = bin()
        .args(["--mode", "rational", "absorb", "--simplex"])
        .arg(&simplex)
        .arg("--body")
        .arg(&body)
        .output()
        .unwrap();
    let report = stdout_json(&out);
    assert_eq!(report["results"]["xi"]["value"], "4");
    assert_eq!(report["results"]["alpha"]["value"], "2");
}

#[test]
fn rational_mode_rejects_ball_bodies() {
    let simplex = write_temp("ratball-s.json", STD2);
    let body = write_temp("ratball-b.json", BALL);
    let out = bin()
        .args(["--mode", "rational", "absorb", "--simplex"])
        .arg(&simplex)
        .arg("--body")
        .arg(&body)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_simplex_exits_3() {
    let simplex = write_temp("degen.json", DEGENERATE);
    let out = bin().args(["info", "--simplex"]).arg(&simplex).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_error_exits_2() {
    let simplex = write_temp("badjson.json", "not json");
    let out = bin().args(["info", "--simplex"]).arg(&simplex).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dimension_mismatch_exits_4() {
    let simplex = write_temp("dim-s.json", STD2);
    let body = write_temp("dim-b.json", r#"{"kind":"ball","center":[0,0,0],"radius":1}"#);
    let out = bin()
        .args(["absorb", "--simplex"])
        .arg(&simplex)
        .arg("--body")
        .arg(&body)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn unsupported_hadamard_order_exits_5() {
    let out = bin()
        .args(["construct", "--kind", "hadamard", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn construct_is_deterministic() {
    let run = || {
        bin()
            .args(["construct", "--kind", "random", "--n", "3", "--seed", "7"])
            .output()
            .unwrap()
            .stdout
    };
    let a = run();
    assert!(!a.is_empty());
    assert_eq!(a, run());
}

#[test]
fn construct_regular_ball_has_unit_vertices() {
    let out = bin()
        .args(["construct", "--kind", "regular-ball", "--n", "2"])
        .output()
        .unwrap();
    let simplex: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let vertices = simplex["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 3);
    for v in vertices {
        let norm: f64 = v
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_f64().unwrap().powi(2))
            .sum::<f64>()
            .sqrt();
        assert!((norm - 1.0).abs() < 1e-9);
    }
}

#[test]
fn verify_all_passes_and_reports_suites() {
    let out = bin()
        .args(["verify", "--suite", "all", "--n", "3", "--cases", "50"])
        .output()
        .unwrap();
    let report = stdout_json(&out);
    assert_eq!(report["results"]["pass"], true);
    let suites = report["results"]["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 5);
    for suite in suites {
        assert_eq!(suite["pass"], true, "suite {}", suite["suite"]);
    }
}

#[test]
fn verify_fails_with_exit_1_under_impossible_tolerance() {
    let out = bin()
        .args([
            "verify", "--suite", "corollary1", "--n", "3", "--cases", "20", "--tol", "1e-30",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let suite = &report["results"]["suites"][0];
    assert_eq!(suite["pass"], false);
    // the failing case is serialized for replay
    assert!(suite["failing_simplex"]["vertices"].is_array());
}

#[test]
fn search_writes_history_csv() {
    let csv_path = std::env::temp_dir().join("simplex-absorb-test-history.csv");
    let out = bin()
        .args([
            "search", "--n", "2", "--body", "ball", "--restarts", "3", "--seed", "5",
            "--max-iters", "80", "--history",
        ])
        .arg(&csv_path)
        .output()
        .unwrap();
    let report = stdout_json(&out);
    let best = report["results"]["best_value"].as_f64().unwrap();
    assert!((best - 2.0).abs() < 0.05, "best {best}");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("restart,iteration,value"));
    let first = lines.next().unwrap();
    assert_eq!(first.split(',').count(), 3);
}

#[test]
fn reports_are_deterministic_for_fixed_inputs() {
    let simplex = write_temp("det-s.json", STD2);
    let body = write_temp("det-b.json", CUBE);
    let run = || {
        let out = bin()
            .args(["absorb", "--simplex"])
            .arg(&simplex)
            .arg("--body")
            .arg(&body)
            .output()
            .unwrap();
        let mut report = stdout_json(&out);
        report.as_object_mut().unwrap().remove("wall_time_ms");
        report
    };
    assert_eq!(run(), run());
}
