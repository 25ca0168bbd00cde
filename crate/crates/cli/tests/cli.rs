use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn pointline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pointline")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn gen_then_lambda_gives_57_lines() {
    let dir = tempfile::tempdir().unwrap();
    let hesse = dir.path().join("hesse.json");
    let h57 = dir.path().join("h57.json");
    let out = pointline(&["gen", "hesse", "-o", hesse.to_str().unwrap()]);
    assert!(out.status.success());
    let out = pointline(&[
        "--json", "op", "lambda", "--mult", "atleast:2", "--count", "atleast:2",
        "-i", hesse.to_str().unwrap(), "-o", h57.to_str().unwrap(),
    ]);
    let v = json_of(&out);
    assert_eq!(v["lines"], 57);
    assert_eq!(v["empty"], false);
    let v = json_of(&pointline(&["--json", "lattice", "-i", h57.to_str().unwrap()]));
    assert_eq!(v["tau"], 2361);
    assert_eq!(v["nk"]["8"], 21);
}

#[test]
fn generated_file_is_canonical() {
    let a = pointline(&["gen", "c8"]);
    let b = pointline(&["gen", "c8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_lambda_is_not_an_error() {
    let out = pointline(&[
        "--json", "op", "lambda", "--mult", "exact:2", "--count", "exact:3",
        "-i", data("generic5.json").to_str().unwrap(),
    ]);
    let v = json_of(&out);
    assert_eq!(v["empty"], true);
    assert_eq!(v["lines"], 0);
}

#[test]
fn conic_line_file_is_free() {
    let path = data("cl.json");
    let v = json_of(&pointline(&["--json", "free", "-i", path.to_str().unwrap()]));
    assert_eq!(v["verdict"]["kind"], "Free");
    assert_eq!(v["d1"], 4);
    assert_eq!(v["d2"], 13);
    assert_eq!(v["tau"], 237);
    assert_eq!(v["exact"], true);
}

#[test]
fn generic_lines_are_not_free() {
    let v = json_of(&pointline(&["--json", "free", "-i", data("generic5.json").to_str().unwrap()]));
    assert_eq!(v["verdict"]["kind"], "NotFree");
}

#[test]
fn rigidity_writes_the_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = dir.path().join("ideal.txt");
    let out = pointline(&[
        "--json", "rigid", "-i", data("generic5.json").to_str().unwrap(), "--ideal", ideal.to_str().unwrap(),
    ]);
    let v = json_of(&out);
    assert_eq!(v["verdict"]["kind"], "Inconclusive");
    assert_eq!(v["verdict"]["excess"], 2);
    assert!(ideal.exists());
}

#[test]
fn unexpected_on_o33() {
    let v = json_of(&pointline(&["--json", "unexpected", "-i", data("o33.json").to_str().unwrap()]));
    assert_eq!(v["report"]["degrees"], serde_json::json!([16]));
    assert_eq!(v["slp"][0]["degree"], 14);
}

#[test]
fn monodromy_comparison_flags_two_orders() {
    let out = pointline(&[
        "monodromy", "--table", data("cl_monof3.csv").to_str().unwrap(), "-d", "18", "-r", "12",
        "--delta", "(t^3+1)^4*(t^2+t+1)^2*(t-1)^11",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("DISAGREE").count(), 2);
}

#[test]
fn map_eval_at_a_base_point() {
    let v = json_of(&pointline(&["--json", "map-eval", "--point", "0:0:1"]));
    assert!(v.get("IndeterminateAt").is_some(), "{v}");
    let v = json_of(&pointline(&["--json", "map-eval", "--point", "1:1:1"]));
    assert!(v.get("Image").is_some(), "{v}");
}

#[test]
fn usage_errors_exit_one() {
    let out = pointline(&["gen", "ngon", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "UnsupportedN");

    let out = pointline(&["lattice", "-i", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "Io");

    let out = pointline(&["op", "lambda", "--mult", "exact:", "--count", "atleast:2", "-i", "x"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(pointline(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn computation_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("points.json");
    let body = r#"{"field": {"label": "Q", "minpoly": [[0,1],[1,1]]}, "points": [
        [[[1,1]],[[0,1]],[[0,1]]], [[[0,1]],[[1,1]],[[0,1]]], [[[0,1]],[[0,1]],[[1,1]]],
        [[[1,1]],[[1,1]],[[1,1]]], [[[1,1]],[[2,1]],[[3,1]]], [[[2,1]],[[-1,1]],[[5,1]]],
        [[[7,1]],[[3,1]],[[-2,1]]], [[[4,1]],[[9,1]],[[1,1]]], [[[-3,1]],[[2,1]],[[11,1]]]]}"#;
    std::fs::write(&pts, body).unwrap();
    let out = pointline(&["pencil", "--points", pts.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(error_kind(&out), "NotAPencil");
}
