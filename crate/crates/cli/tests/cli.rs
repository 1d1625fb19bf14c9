use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross")).args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, quiver: &str, extra: &[&str]) -> Output {
    let path = fixture(quiver);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Every number in the document is an integer; rationals travel as strings.
fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float {n} in output"),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn complete_a2_has_three_walls() {
    let v = json(&run_on("complete", "a2", &["--order", "8"]));
    assert_eq!(v["walls"].as_array().unwrap().len(), 3);
    assert_eq!(v["order"], 8);
    assert_no_floats(&v);
}

#[test]
fn check_k2_holds() {
    let out = run_on("check", "k2", &["--order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["consistent"], true);
}

#[test]
fn render_k3_marks_dense_region() {
    let out = run_on("render", "k3", &["--order", "6"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("class=\"dense\""));
}

#[test]
fn theta_both_methods_agree() {
    let v = json(&run_on("theta", "k2", &["--order", "5", "--m", "1,1", "--theta", "-1,-2"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["path"], v["counts"]);
    assert_no_floats(&v);
    let v = json(&run_on("theta", "a2", &["--order", "5", "--m", "0,1", "--theta", "2,-1", "--method", "path", "--basepoint", "3,1/2"]));
    assert_eq!(v["path"]["series"]["text"], "1 + x2");
    assert!(v.get("counts").is_none());
}

#[test]
fn joyce_and_framed() {
    let v = json(&run_on("joyce", "a2", &["--order", "4", "--theta", "1,-1"]));
    let inv = v["invariants"].as_array().unwrap();
    assert_eq!(inv[0]["d"], serde_json::json!([1, 1]));
    assert_eq!(inv[0]["J"], "1");
    let v = json(&run_on("framed", "k2", &["--m", "3,0", "--theta", "0,1", "--dim", "2,0"]));
    assert_eq!(v["counts"][0]["K"], "3");
}

#[test]
fn walls_and_stability() {
    let v = json(&run_on("walls", "k2", &["--order", "4"]));
    let normals: Vec<Value> = v["walls"].as_array().unwrap().iter().map(|w| w["normal"].clone()).collect();
    assert!(normals.contains(&serde_json::json!([1, 1])));
    let v = json(&run_on("stability", "a2", &["--order", "5"]));
    assert_no_floats(&v);
}

#[test]
fn oracle_agrees_and_respects_budget() {
    let v = json(&run_on("oracle", "k2", &["--dim", "1,1", "--theta", "1,-1"]));
    assert!(v["counts"].as_array().unwrap().iter().all(|c| c["agree"] == true));
    let v = json(&run_on("oracle", "triangle", &["--order", "2", "--self-stable", "--prime", "2"]));
    assert_eq!(v["counts_determine_euler_numbers"], false);
    assert_eq!(v["self_stable"][0]["dims"], serde_json::json!([[0, 0, 1], [0, 1, 0], [1, 0, 0]]));
    let out = run_on("oracle", "k2", &["--dim", "3,3", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn input_errors_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [1, 2], \"arrows\": [[1, 2], [2, 1]]}").unwrap();
    let out = run(&["complete", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oriented 2-cycle"));
    assert_eq!(run_on("joyce", "triangle", &["--theta", "1,-1,0"]).status.code(), Some(4));
    assert_eq!(run_on("complete", "a2", &["--order", "0"]).status.code(), Some(4));
    assert_eq!(run_on("complete", "a2", &["--prime", "4"]).status.code(), Some(4));
    assert_eq!(run_on("complete", "a2", &["--format", "svg"]).status.code(), Some(4));
    assert_eq!(run_on("theta", "a2", &["--m", "1,0", "--theta", "0,1"]).status.code(), Some(4));
    assert_eq!(run(&["complete"]).status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = run_on("complete", "k2", &["--order", "7", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let s1 = run_on("render", "k2", &["--order", "6"]).stdout;
    let s2 = run_on("render", "k2", &["--order", "6"]).stdout;
    assert_eq!(s1, s2);
}

#[test]
fn text_format() {
    let out = run_on("check", "a2", &["--order", "5", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("equivalent"));
}
