use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_p1moduli"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON")
}

#[test]
fn analyze_odd_degree() {
    let input = r#"{"tower": [["-1"]], "points": [[["0","0"],["1","0"]], [["0","1"],["1","0"]], [["0","-1"],["1","0"]], [["3","0"],["1","0"]], [["1","0"],["0","0"]]]}"#;
    let (code, out) = run(&["analyze"], input);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "DefinedOnP1");
    assert_eq!(v["certificate"]["rule"], "n_odd");
    assert!(v.get("timings").is_none());
}

#[test]
fn counterexample_round_trips_through_analyze() {
    let (code, out) = run(&["counterexample", "--a", "-1", "--b", "3", "--n", "8", "--seed", "2"], "");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"]["outcome"], "NotDefined");
    let d = serde_json::to_string(&v["divisor"]).unwrap();
    let (code, again) = run(&["analyze", "--pretty"], &d);
    assert_eq!(code, 0);
    let w = json(&again);
    assert_eq!(w["outcome"], "NotDefined");
    assert_eq!(w["certificate"], v["verdict"]["certificate"]);
}

#[test]
fn equivalence_and_conic() {
    let d1 = r#"{"tower": [], "points": [["0","1"], ["1","1"], ["2","1"], ["1","0"]]}"#;
    let d2 = r#"{"tower": [], "points": [["0","1"], ["1","1"], ["-1","1"], ["1","0"]]}"#;
    let (code, out) = run(&["equivalence"], &format!(r#"{{"first": {d1}, "second": {d2}}}"#));
    assert_eq!(code, 0);
    assert_eq!(json(&out)["equivalent"], true);

    let (code, out) = run(&["conic"], r#"{"form": ["3","0","0","5","0","-1"]}"#);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["solvable"], false);
    assert_eq!(v["point"], Value::Null);
}

#[test]
fn input_errors_exit_2() {
    let (code, out) = run(&["analyze"], "{not json");
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"], "schema");
    let (code, _) = run(&["counterexample", "--a", "1", "--b", "1", "--n", "8"], "");
    assert_eq!(code, 2);
    let (code, _) = run(&["hyperelliptic"], r#"{"branch": {"tower": [], "points": [["0","1"], ["1","1"], ["2","1"], ["3","1"]]}}"#);
    assert_eq!(code, 2);
}

#[test]
fn timings_only_on_request() {
    let input = r#"{"form": ["1","0","0","1","0","-2"]}"#;
    let (_, plain) = run(&["conic"], input);
    let (_, timed) = run(&["conic", "--timings"], input);
    assert!(json(&plain).get("timings").is_none());
    assert!(json(&timed)["timings"]["total_ms"].is_number());
}
