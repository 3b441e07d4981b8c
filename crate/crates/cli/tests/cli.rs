use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heisenhardy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write_cube(dir: &Path) -> String {
    let path = dir.join("cube.json");
    let out = run(&["generate", "cube", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    path.to_str().unwrap().to_string()
}

#[test]
fn distance_at_cube_center() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_cube(dir.path());
    let v = json(&run(&["distance", "--polytope", &cube, "--point", "0,0,0"]));
    for key in ["d1", "d2", "omega", "delta_c", "delta_k"] {
        assert!((v[key].as_f64().unwrap() - 1.0).abs() < 1e-12, "{key}");
    }
    let b = v["bracket"].as_array().unwrap();
    assert!((b[1].as_f64().unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-12);
}

#[test]
fn distance_csv_has_header_and_row() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_cube(dir.path());
    let out = run(&["--format", "csv", "distance", "--polytope", &cube, "--point", "0.1,-0.2,0.3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("x1,x2,x3,delta_c"));
    assert!(lines[1].starts_with("0.1,-0.2,0.3,"));
}

#[test]
fn error_classes_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_cube(dir.path());
    let outside = run(&["distance", "--polytope", &cube, "--point", "2,0,0"]);
    assert_eq!(outside.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&outside.stderr).contains("point not in interior"));
    let missing = run(&["distance", "--polytope", dir.path().join("none.json").to_str().unwrap(), "--point", "0,0,0"]);
    assert_eq!(missing.status.code(), Some(3));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"halfspaces\": [").unwrap();
    let malformed = run(&["distance", "--polytope", bad.to_str().unwrap(), "--point", "0,0,0"]);
    assert_eq!(malformed.status.code(), Some(4));
    let usage = run(&["distance", "--point", "0,0,0"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn unbounded_polytope_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let half = dir.path().join("half.json");
    std::fs::write(&half, r#"{"halfspaces": [{"n": [0, 0, 1], "c": 1}]}"#).unwrap();
    let out = run(&["distance", "--polytope", half.to_str().unwrap(), "--point", "0,0,0"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn cm_and_constants() {
    let v = json(&run(&["cm", "--m", "1"]));
    assert_eq!(v["bound_ok"], Value::Bool(true));
    assert!(v["residual"].as_f64().unwrap() <= 1e-12);
    let v = json(&run(&["constants", "--theorem", "6.2", "--a", "117.57"]));
    assert!((v["constant"].as_f64().unwrap() - 2f64.powf(-4.0 / 3.0)).abs() < 1e-4);
    let v = json(&run(&["constants", "--theorem", "3.2", "--m", "2"]));
    assert_eq!(v["m"], 2);
    assert_eq!(run(&["constants", "--theorem", "3.2"]).status.code(), Some(4));
}

#[test]
fn epsilon_constants_write_a_domain_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cyl.json");
    let v = json(&run(&["constants", "--theorem", "3.3", "--epsilon", "1", "--output", path.to_str().unwrap()]));
    assert!(v["a"].as_f64().unwrap() > 0.0);
    let d = json(&run(&["distance", "--polytope", path.to_str().unwrap(), "--point", &format!("{},0,0.5", v["a"].as_f64().unwrap().sqrt() + 1.0)]));
    assert!(d["delta_c"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_is_deterministic_and_filterable() {
    let args = ["verify", "--seed", "7", "--only", "sandwich,cardano,cm", "--samples", "300"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["cardano", "cm", "sandwich"]);
    assert_eq!(v["all_pass"], Value::Bool(true));
    assert_eq!(run(&["verify", "--only", "bogus"]).status.code(), Some(4));
}

#[test]
fn quotient_trial_and_minimize() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_cube(dir.path());
    let v = json(&run(&["quotient", "--polytope", &cube, "--weight", "DELTA_C", "--trial", "1", "--grid", "32"]));
    assert_eq!(v["grid"], 32);
    assert!((v["value"].as_f64().unwrap() - 2.25).abs() < 0.05 * 2.25);
    assert_eq!(v["pass"], Value::Bool(true));
    let v = json(&run(&["quotient", "--polytope", &cube, "--weight", "d1d2", "--minimize", "--grid", "16"]));
    assert_eq!(v["bound"].as_f64().unwrap(), 0.25);
    assert!(v["runtime"].as_f64().unwrap() >= 0.0);
    assert_eq!(run(&["quotient", "--polytope", &cube, "--minimize", "--grid", "8"]).status.code(), Some(4));
    assert_eq!(run(&["quotient", "--polytope", &cube, "--grid", "16"]).status.code(), Some(4));
}

#[test]
fn quotient_sweep_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write_cube(dir.path());
    let out = run(&["--format", "csv", "quotient", "--polytope", &cube, "--trials", "1,2", "--grid", "16,20"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("weight,grid,mode,n,value,bound,pass,runtime"));
}

#[test]
fn generated_shapes_parse() {
    for shape in ["cube", "simplex", "prism", "cylinder"] {
        let out = run(&["generate", shape, "--sides", "8", "--seed", "3"]);
        assert!(out.status.success(), "{shape}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v["halfspaces"].as_array().unwrap().len() >= 4);
    }
}
