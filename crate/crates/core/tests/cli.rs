use std::process::{Command, Output};

use serde_json::Value;
use uvbeta::solver::SolutionGrid;

fn uvbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uvbeta")).args(args).output().expect("spawn")
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn solve_writes_grid_that_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    let o = uvbeta(&["solve", "--beta", "0.6", "--tol", "1e-10", "--out", p]);
    let summary = stdout_json(&o);
    assert!(summary["residual"].as_f64().unwrap() < 1e-9);
    let text = std::fs::read_to_string(&path).unwrap();
    let g = SolutionGrid::from_json(&text).unwrap();
    assert_eq!(g.to_json().unwrap(), text);
    // a second run produces identical bytes
    let path2 = dir.path().join("g2.json");
    uvbeta(&["solve", "--beta", "0.6", "--tol", "1e-10", "--out", path2.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path2).unwrap(), text.as_bytes());
}

#[test]
fn exit_codes() {
    let o = uvbeta(&["solve", "--beta", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta out of range"));
    assert_eq!(uvbeta(&["solve", "--beta", "0.6", "--tol", "1"]).status.code(), Some(1));
    assert_eq!(uvbeta(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(uvbeta(&["--help"]).status.code(), Some(0));
    let o = uvbeta(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    for s in uvbeta::verify::SUITES {
        assert!(err.contains(s), "{err}");
    }
    // Picard below the contraction threshold is a numerical failure
    assert_eq!(uvbeta(&["solve", "--beta", "0.3", "--picard"]).status.code(), Some(2));
}

#[test]
fn stokes_command() {
    let v = stdout_json(&uvbeta(&["stokes", "--beta", "0.5"]));
    assert_eq!(v["l"], 1);
    let a = v["angles"].as_array().unwrap();
    assert!((a[0].as_f64().unwrap() - 1.5707963).abs() < 1e-7);
    assert!((a[1].as_f64().unwrap() + 1.5707963).abs() < 1e-7);
}

#[test]
fn table_from_grid_file_matches_interpolant() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.json");
    let csv = dir.path().join("t.csv");
    uvbeta(&["solve", "--beta", "0.6", "--out", grid.to_str().unwrap()]);
    let o = uvbeta(&["table", "--grid", grid.to_str().unwrap(), "--beta", "0.6", "--xmin", "0.01", "--xmax", "100", "--points", "40", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,re,im"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            [f[0], f[1], f[2]]
        })
        .collect();
    assert_eq!(rows.len(), 40);
    let g = SolutionGrid::from_json(&std::fs::read_to_string(&grid).unwrap()).unwrap();
    assert_eq!(rows[0][0], 0.01);
    assert_eq!(rows[0][1], g.interpolate(0.01).re);
    assert!(rows.iter().all(|r| r[2] == 0.0));
    assert!(rows.windows(2).all(|w| w[1][1] <= w[0][1]), "u not non-increasing");
}

#[test]
fn v_table_tail_approaches_one() {
    let o = uvbeta(&["table", "--fn", "v", "--beta", "0.6", "--points", "20"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let vals: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!((vals[vals.len() - 1] - 1.0).abs() < (vals[0] - 1.0).abs());
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"beta": 0.25, "fn": "u"}"#).unwrap();
    let v = stdout_json(&uvbeta(&["stokes", "--config", cfg.to_str().unwrap()]));
    assert_eq!(v["l"], 1);
    assert!((v["angles"][0].as_f64().unwrap() + std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    // the flag wins over the file
    let v = stdout_json(&uvbeta(&["stokes", "--config", cfg.to_str().unwrap(), "--beta", "0.5"]));
    assert!((v["angles"][0].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    std::fs::write(&cfg, r#"{"bta": 0.25}"#).unwrap();
    assert_eq!(uvbeta(&["stokes", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn eval_on_far_sheet_reports_connection_residual() {
    let v = stdout_json(&uvbeta(&["eval", "--fn", "u", "--beta", "0.6", "--r", "2", "--phi", "3.14159"]));
    assert!(v["value"]["re"].as_f64().unwrap().is_finite());
    assert!(v["connection_residual"].as_f64().unwrap() < 1e-7);
    let v = stdout_json(&uvbeta(&["eval", "--fn", "L", "--parity", "odd", "--beta", "0.6", "--r", "1.7", "--arg-sheet", "0.8"]));
    let m = &v["matrix"];
    let c = |i: usize, j: usize| num_complex::Complex64::new(m[i][j]["re"].as_f64().unwrap(), m[i][j]["im"].as_f64().unwrap());
    let det = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
    assert!((det - 1.0).norm() < 1e-7, "{det}");
}

#[test]
fn ml_and_gbeta_commands() {
    let v = stdout_json(&uvbeta(&["ml", "--alpha", "1.428571", "--z", "2"]));
    let total = v["total"]["re"].as_f64().unwrap();
    let series = v["series"]["re"].as_f64().unwrap();
    assert!((total - series).abs() < 1e-6 * (1.0 + series.abs()));
    let v = stdout_json(&uvbeta(&["gbeta", "--beta", "0.5", "--r", "1", "--phi", "1"]));
    assert!((v["value"]["re"].as_f64().unwrap() - 0.61635037580491363).abs() < 1e-12);
    assert!((v["value"]["im"].as_f64().unwrap() + 0.37730104062745863).abs() < 1e-12);
    assert_eq!(v["z"]["arg_sheet"], 1.0);
}

#[test]
fn coeffs_command() {
    let v = stdout_json(&uvbeta(&["coeffs", "--beta", "0.6", "--terms", "2", "--format", "json"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["re"].as_f64().unwrap() > 0.0);
    assert!(rows[0]["err_est"].as_f64().unwrap() < 1e-8);
    assert_eq!(uvbeta(&["coeffs", "--beta", "0.6", "--terms", "500"]).status.code(), Some(1));
}

#[test]
fn verify_single_suite() {
    let o = uvbeta(&["verify", "--suite", "oracle", "--beta", "0.9"]);
    let v = stdout_json(&o);
    assert_eq!(v[0]["suite"], "oracle");
    assert_eq!(v[0]["pass"], true);
}
