//! Golden-file tests of the `lelong` binary. Set `UPDATE_GOLDEN=1` to rewrite
//! the expected outputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lelong"))
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden(name: &str, args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(out.stdout == expected, "output differs from {}:\n{}", path.display(), String::from_utf8_lossy(&out.stdout));
    if name.ends_with(".json") {
        serde_json::from_slice(&out.stdout).unwrap()
    } else {
        serde_json::Value::Null
    }
}

#[test]
fn analyze_newton_example() {
    let v = golden("analyze_newton.json", &["analyze", "x1^2*x2 + x2^3", "--dir", "1,1"]);
    assert_eq!(v["directions"][0]["index"], "3");
    assert_eq!(v["lelong_number"], "3");
    assert_eq!(v["mass"]["tau"], "inf");
}

#[test]
fn analyze_constant() {
    let v = golden("analyze_constant.json", &["analyze", "1"]);
    assert_eq!(v["directions"][0]["index"], "0");
    assert_eq!(v["lelong_number"], "0");
    assert_eq!(v["partial_numbers"], serde_json::json!(["0"]));
    assert_eq!(v["mass"]["tau"], "0");
}

#[test]
fn analyze_without_axis_points() {
    let v = golden("analyze_monomial.json", &["analyze", "x1*x2"]);
    assert_eq!(v["mass"]["tau"], "inf");
    assert!(v.get("mass_bound").is_none());
}

#[test]
fn analyze_axis_touching_csv() {
    golden("analyze_axes.csv", &["analyze", "x1^2 + x2^3 + x1*x2", "--dir", "1,1", "--dir", "3,2", "--format", "csv"]);
}

#[test]
fn estimate_log_sum_powers() {
    let v = golden("estimate_lsp.json", &["estimate", &data("lsp.json"), "--dir", "1,1", "--last-decade", "6"]);
    let est = v["directional"][0]["estimate"].as_f64().unwrap();
    assert!((est - 1.0).abs() <= 1e-3);
}

#[test]
fn estimate_weight_is_exact() {
    let v = golden("estimate_weight.json", &["estimate", &data("weight.json"), "--dir", "1,1", "--probe", "0.36787944117144233,0.1353352832366127"]);
    let est = v["directional"][0]["estimate"].as_f64().unwrap();
    assert_eq!(v["directional"][0]["exact"].as_f64(), Some(0.5));
    assert!((est - 0.5).abs() <= 1e-12);
    let ind = v["indicator"][0]["estimate"].as_f64().unwrap();
    assert!((ind + 1.0).abs() <= 1e-12);
}

#[test]
fn estimate_exact_compare() {
    let v = golden("estimate_compare.json", &["estimate", &data("newton.json"), "--exact-compare", "--dir", "1,1", "--dir", "2,1", "--dir", "1,3"]);
    assert!(v["compare"]["max_deviation"].as_f64().unwrap() <= 1e-2);
}

#[test]
fn green1d_default() {
    let v = golden("green1d.json", &["green1d"]);
    assert_eq!(v["green"]["passed"], true);
}

#[test]
fn counterexample() {
    let v = golden("counterexample.json", &["counterexample"]);
    assert_eq!(v["passed"], true);
    assert!(v["witness"]["v_minus_f"].as_f64().unwrap() > 0.0);
    assert_eq!(v["tau_common"], "2");
}

#[test]
fn mass_inline_and_file() {
    let v = golden("mass.json", &["mass", r#"{"dim":2,"generators":[["1","0"],["0","2"]]}"#]);
    assert_eq!(v["tau"], "2");
    let out = run(&["mass", &data("mass.json")]);
    assert_eq!(out.stdout, std::fs::read(golden_path("mass.json")).unwrap());
}

#[test]
fn mass_montecarlo_csv() {
    golden("mass_mc.csv", &["mass", &data("mass.json"), "--method", "montecarlo", "--samples", "100000", "--seed", "7", "--format", "csv"]);
}

#[test]
fn infinite_mass_exits_zero() {
    let out = run(&["mass", r#"{"dim":2,"generators":[["1","1"]]}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tau"], "inf");
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["analyze", "x1 +"],
        vec!["analyze", "x1", "--dir", "1,1"],
        vec!["mass", "/nonexistent/diagram.json"],
        vec!["mass", r#"{"dim":2,"generators":[["1"]]}"#],
        vec!["green1d", r#"{"poles":[[2,0]],"weights":[1]}"#],
        vec!["estimate", r#"{"kind":"logsumpowers","exponents":["1","2"]}"#, "--exact-compare"],
        vec!["bogus"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let args = ["mass", &data("mass.json"), "--method", "montecarlo", "--samples", "50000", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["green1d", "--samples", "2000", "--seed", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_directory() {
    let dir = std::env::temp_dir().join(format!("lelong-out-{}", std::process::id()));
    let out = run(&["mass", &data("mass.json"), "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(dir.join("mass.json")).unwrap();
    assert_eq!(written, std::fs::read(golden_path("mass.json")).unwrap());
    std::fs::remove_dir_all(dir).unwrap();
}
