use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn problem(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], file: &NamedTempFile) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy-lambda"))
        .args(args)
        .arg(file.path())
        .output()
        .unwrap()
}

fn json_ok(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn extremal_single_node() {
    let f = problem(r#"{"beta": [[0.5, 0.0]], "c": [[1.0, 0.0]]}"#);
    let doc = json_ok(&run(&["extremal"], &f));
    assert!((doc["support"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-6);
    assert_eq!(doc["unique"], Value::Bool(true));
    assert_eq!(doc["certificate_report"]["passed"], Value::Bool(true));
}

#[test]
fn extremal_is_deterministic() {
    let f = problem(r#"{"beta": [[0.3, 0.1], [-0.2, 0.5], [0.1, -0.6]], "c": [[1, 0], [0, 2], [-1, 1]]}"#);
    let a = run(&["extremal", "--seed", "7"], &f);
    let b = run(&["extremal", "--seed", "7"], &f);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_c_is_a_validation_error() {
    let f = problem(r#"{"beta": [[0.5, 0.0]]}"#);
    let out = run(&["extremal"], &f);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`c`"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_beta_names_the_position() {
    for (json, needle) in [
        (r#"{"beta": [[0.5, 0.0], [1.2, 0.0]], "c": [[1, 0], [1, 0]]}"#, "beta[1]"),
        (r#"{"beta": [[0.5, 0.0], [0.0, 0.0]], "c": [[1, 0], [1, 0]]}"#, "beta[1]"),
        (r#"{"beta": [[0.5, 0.0], [0.5, 0.0]], "c": [[1, 0], [1, 0]]}"#, "beta[0] and beta[1]"),
        (r#"{"beta": []}"#, "nonempty"),
        (r#"{"beta": [[0.5, 0.0], [0.1]]}"#, "line 1 column"),
    ] {
        let out = run(&["extremal"], &problem(json));
        assert_eq!(out.status.code(), Some(2), "{json}");
        assert!(stderr(&out).contains(needle), "{json}: {}", stderr(&out));
    }
}

#[test]
fn classify_kinds() {
    let f = problem(r#"{"beta": [[0.3, 0.2], [-0.4, 0.1]], "form": {"ell": 0, "w_zeros": [], "q": [[1, 0], [1, 0]]}}"#);
    let doc = json_ok(&run(&["classify"], &f));
    assert_eq!(doc["kind"], "ExtremeNotExposed");
    assert!(doc["nearest_circle_distance"].as_f64().unwrap() < 1e-9);

    let f = problem(r#"{"beta": [[0.5, 0.0]], "form": {"q": [[1, 0]]}}"#);
    let doc = json_ok(&run(&["classify"], &f));
    assert_eq!(doc["kind"], "Exposed");
    assert_eq!(doc["certificate_report"]["passed"], Value::Bool(true));
}

#[test]
fn classify_rejects_interior_root() {
    let f = problem(r#"{"beta": [[0.3, 0.2], [-0.4, 0.1]], "form": {"q": [[-0.5, 0], [1, 0]]}}"#);
    let out = run(&["classify"], &f);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("form"), "{}", stderr(&out));
}

#[test]
fn slice_single_node_is_a_circle() {
    let f = problem(r#"{"beta": [[0.5, 0.0]]}"#);
    let out = run(&["slice", "--steps", "256"], &f);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "support").unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 256);
    for row in rows {
        let s: f64 = row.split(',').nth(col).unwrap().parse().unwrap();
        assert!((s - 4.0 / 3.0).abs() < 1e-6);
    }
}

#[test]
fn slice_rejects_bad_plane() {
    let f = problem(r#"{"beta": [[0.5, 0.0], [-0.3, 0.2]]}"#);
    let out = run(&["slice", "--plane", "[[[1,0]],[[0,1]]]"], &f);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--plane[0]"), "{}", stderr(&out));
}

#[test]
fn decompose_non_extreme_form() {
    let f = problem(r#"{"beta": [[0.3, 0.2], [-0.4, 0.1]], "form": {"ell": 1, "q": [[1, 0]]}}"#);
    let doc = json_ok(&run(&["decompose"], &f));
    assert!(doc["midpoint_error"].as_f64().unwrap() <= 1e-8);
    assert!(doc["separation"].as_f64().unwrap() >= 1e-6);
    assert!(doc["F1"]["q"].is_array() && doc["F2"]["q"].is_array());
}

#[test]
fn decompose_rejects_exposed_form() {
    let f = problem(r#"{"beta": [[0.3, 0.2], [-0.4, 0.1]], "form": {"q": [[1, 0]]}}"#);
    assert_eq!(run(&["decompose"], &f).status.code(), Some(2));
}

#[test]
fn verify_detects_corrupted_scale() {
    let beta = r#""beta": [[0.3, 0.2], [-0.4, 0.1]]"#;
    let doc = json_ok(&run(&["verify"], &problem(&format!(r#"{{{beta}, "form": {{"q": [[2, 0], [0.5, 0.5]]}}}}"#))));
    assert_eq!(doc["passed"], Value::Bool(true));
    let c = doc["c"].to_string();

    let ext = json_ok(&run(&["extremal"], &problem(&format!(r#"{{{beta}, "c": {c}}}"#))));
    let (q, scale) = (ext["F"]["q"].to_string(), ext["F"]["A"].as_f64().unwrap());
    let with_scale = |a: f64| problem(&format!(r#"{{{beta}, "c": {c}, "form": {{"q": {q}, "A": {a}}}}}"#));

    let good = json_ok(&run(&["verify"], &with_scale(scale)));
    assert_eq!(good["passed"], Value::Bool(true), "{good}");

    let bad = json_ok(&run(&["verify"], &with_scale(2.0 * scale)));
    assert_eq!(bad["passed"], Value::Bool(false));
    assert!(bad["pairing_error"].as_f64().unwrap() > 0.5);
    assert!(bad["failures"].to_string().contains("pairing"), "{}", bad["failures"]);
}

#[test]
fn oracle_agrees_with_solver() {
    let f = problem(r#"{"beta": [[0.5, 0.0]], "c": [[1, 0]]}"#);
    let doc = json_ok(&run(&["oracle"], &f));
    let solver = doc["solver_value"].as_f64().unwrap();
    let oracle = doc["oracle_value"].as_f64().unwrap();
    assert!((solver - 4.0 / 3.0).abs() < 1e-8);
    assert!(oracle <= solver + 1e-6 && (solver - oracle) / solver < 1e-3);
}

#[test]
fn bad_flags_are_validation_errors() {
    let f = problem(r#"{"beta": [[0.5, 0.0]], "c": [[1, 0]]}"#);
    assert_eq!(run(&["extremal", "--grid", "1000"], &f).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--deg", "0"], &f).status.code(), Some(2));
}
