use std::process::{Command, Output};

use serde_json::Value;

fn veech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veech"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = veech(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn field_prints_minpoly() {
    let o = veech(&["field", "9"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("x^3 - 3x - 1"));
    let v = json(&["field", "7", "--json"]);
    assert_eq!(v["minpoly"], "x^3 - x^2 - 2x + 1");
    assert_eq!(v["degree"], 3);
}

#[test]
fn classify_two_step_cycle() {
    let v = json(&["classify", "7", "1", "a^2-1", "--json"]);
    assert_eq!(v["class"], "hyperbolic");
    assert_eq!(v["period"], serde_json::json!([5, 0]));
    assert_eq!(v["preperiod"], serde_json::json!([]));
    assert_eq!(v["stabilizer"], serde_json::json!([["1", "a"], ["a", "a^2 + 1"]]));
    assert_eq!(v["eigenvalue"], "a^2 + a");
}

#[test]
fn classify_diagonal_is_parabolic() {
    let v = json(&["classify", "7", "1", "1", "--json"]);
    assert_eq!(v["class"], "parabolic");
    assert_eq!(v["word"], serde_json::json!([3]));
    let o = veech(&["classify", "7", "1", "1"]);
    assert!(stdout(&o).contains("word: [3]"));
}

#[test]
fn emitted_elements_parse_back() {
    let v = json(&["classify", "7", "2", "a^2 - a", "--json"]);
    let y = v["y"].as_str().unwrap().to_string();
    let again = json(&["classify", "7", "1", &y, "--json"]);
    assert_eq!(again["y"], v["y"]);
    assert_eq!(again["class"], v["class"]);
}

#[test]
fn negative_inputs_are_rotated() {
    let v = json(&["classify", "7", "-1", "a", "--json"]);
    assert_eq!(v["rotated"], true);
}

#[test]
fn stabilizer_of_a_word() {
    let v = json(&["stabilizer", "7", "5,0", "--json"]);
    assert_eq!(v["trace"], "a^2 + 2");
    assert_eq!(v["type"], "hyperbolic");
    let v = json(&["stabilizer", "7", "3", "--json"]);
    assert_eq!(v["det"], "1");
}

#[test]
fn model_runs_invariants() {
    let v = json(&["model", "7", "--json"]);
    assert_eq!(v["N"], 7);
    assert!(v["invariants"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(v["vertex_classes"][0]["angle_over_pi"], "10");
}

#[test]
fn witness_report() {
    let o = veech(&["verify-paper"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains("check FAILED"));
    assert!(text.contains("finding: differs] reference_conjugate"));
    let v = json(&["verify-paper", "--json"]);
    assert_eq!(v["reference_M"], v["factor_product"]);
    assert_eq!(v["eigendirection"]["period"], serde_json::json!([5, 0]));
}

#[test]
fn survey_writes_csv_and_json() {
    let dir = std::env::temp_dir().join(format!("veech-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("s.csv");
    let o = veech(&["survey", "5", "--height", "2", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("N,x,y,class,steps,preperiod,period,stabilizer_trace"));
    assert_eq!(body.lines().count(), 27);
    assert!(!body.contains("hyperbolic"));

    let o = Command::new(env!("CARGO_BIN_EXE_veech"))
        .args(["survey", "5", "--format", "json"])
        .env("VEECH_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("survey_n5_h1.json")).unwrap()).unwrap();
    assert_eq!(v["N"], 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(veech(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(veech(&["classify", "7", "1"]).status.code(), Some(2));
    assert_eq!(veech(&["classify", "7", "1", "a^"]).status.code(), Some(3));
    assert_eq!(veech(&["classify", "7", "1", "a/b"]).status.code(), Some(3));
    assert_eq!(veech(&["field", "8"]).status.code(), Some(3));
    assert_eq!(veech(&["classify", "7", "0", "0"]).status.code(), Some(3));
    assert_eq!(veech(&["stabilizer", "7", "6"]).status.code(), Some(3));
    assert_eq!(veech(&["stabilizer", "7", "x"]).status.code(), Some(3));
}
