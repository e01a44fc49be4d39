//! End-to-end runs of the `hankel-nd` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-nd")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn zeros_prints_one_per_line() {
    let out = run(&["zeros", "--order", "0", "--count", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2.404825557695773\n");
    let out = run(&["zeros", "--order", "1", "--count", "3"]);
    let lines: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!((lines[0] - 3.831705970207512).abs() < 1e-14);
}

#[test]
fn eval_at_a_point() {
    let out = run(&["eval", "--family", "bessel", "--orders", "0,0", "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1.0");
    let out = run(&["eval", "--family", "legendre", "--orders", "1:1", "--point", "0"]);
    assert_eq!(stdout(&out).trim(), "-1.0");
}

#[test]
fn verify_reports_named_checks_and_is_deterministic() {
    let args = ["verify", "--suite", "all", "--n", "128", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 3);
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for required in ["eq1", "eq2", "eq4", "eq7", "eq10", "eq12", "eq13", "eq14-discrete", "theorem1", "theorem2"] {
        assert!(names.contains(&required), "missing {required}");
    }
    for check in report["checks"].as_array().unwrap() {
        assert!(check["max_residual"].is_number() && check["tolerance"].is_number());
        assert_eq!(check["pass"], true, "{check}");
    }
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--suite", "eq13", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["pass"], false);
    assert_eq!(run(&["verify", "--suite", "no-such-check"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "theorem1", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(report["checks"][0]["name"], "theorem1");
}

#[test]
fn grid_output_feeds_transform_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("samples.csv");
    let spectrum = dir.path().join("spectrum.csv");
    let back = dir.path().join("back.csv");
    let out = run(&[
        "eval",
        "--family",
        "bessel",
        "--orders",
        "0",
        "--scale",
        "1.3",
        "--grid",
        "plan",
        "--n",
        "32",
        "--radius",
        "8",
        "--out",
        path(&samples),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&samples).unwrap();
    assert!(text.starts_with("x_1,value\n"));
    assert_eq!(text.lines().count(), 33);

    let out = run(&["transform", "--orders", "0", "--radius", "8", "--in", path(&samples), "--out", path(&spectrum)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&[
        "transform",
        "--orders",
        "0",
        "--radius",
        "8",
        "--inverse",
        "--in",
        path(&spectrum),
        "--out",
        path(&back),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let parse = |p: &Path| -> Vec<(f64, f64)> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| {
                let (a, b) = l.split_once(',').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            })
            .collect()
    };
    let (orig, round) = (parse(&samples), parse(&back));
    assert_eq!(orig.len(), round.len());
    for (a, b) in orig.iter().zip(&round) {
        assert_eq!(a.0, b.0);
        assert!((a.1 - b.1).abs() < 1e-10);
    }
}

#[test]
fn json_output() {
    let out = run(&["eval", "--orders", "0,1", "--n", "3", "--radius", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["shape"], serde_json::json!([3, 3]));
    assert_eq!(v["values"].as_array().unwrap().len(), 9);
}

#[test]
fn solve_with_builtin_profile() {
    let out = run(&["solve", "--orders", "0", "--n", "64", "--radius", "12", "--c", "-1", "--profile", "gaussian"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().count(), 65);
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_input_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = dir.path().join("ragged.csv");
    std::fs::write(&ragged, "x_1,x_2,value\n0,0,1\n0,1,1\n1,0,1\n").unwrap();
    let out = run(&["transform", "--orders", "0,0", "--radius", "1", "--in", path(&ragged)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["eval", "--family", "hankel", "--orders", "0", "--point", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--orders", "0,1", "--point", "1"]).status.code(), Some(2));
    assert_eq!(run(&["zeros", "--order", "-1"]).status.code(), Some(2));
}
