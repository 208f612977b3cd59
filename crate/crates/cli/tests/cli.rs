use std::process::{Command, Output};

use serde_json::Value;

fn fockr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockr")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = fockr(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn json_report_schema() {
    let r = report(&["--suite", "gamma", "--json"]);
    assert_eq!(r["suite"], "gamma");
    assert_eq!(r["seed"], 1);
    assert!(r["duration_ms"].is_u64());
    for key in ["t1", "t2", "a", "q", "seed"] {
        assert!(r["params"].get(key).is_some(), "params.{key}");
    }
    let checks = r["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert!(c.get("detail").is_some());
    }
}

#[test]
fn reports_are_deterministic_apart_from_duration() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("duration_ms");
        v
    };
    let args = ["--suite", "quantum", "--seed", "5", "--degree-cap", "2", "--json"];
    assert_eq!(strip(report(&args)), strip(report(&args)));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = fockr(&["--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("heisenberg"));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(fockr(&["--suite", "gamma", "--degree-cap", "99"]).status.code(), Some(2));
    assert_eq!(fockr(&["--suite", "gamma", "--q", "1/0"]).status.code(), Some(2));
    assert_eq!(fockr(&["--suite", "gamma", "--json", "--table"]).status.code(), Some(2));
    assert_eq!(fockr(&["--suite", "gamma", "--record"]).status.code(), Some(2));
    assert_eq!(fockr(&[]).status.code(), Some(2));
}

#[test]
fn invalid_params_file_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("fockr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("params.json");
    // t1 + t2 = 0 violates the genericity conditions
    std::fs::write(&path, r#"{"t1": "1/2", "t2": "-1/2", "a": ["0/1"], "q": "1/3", "seed": 0}"#).unwrap();
    let out = fockr(&["--suite", "gamma", "--params-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failed_check_exits_with_one() {
    // golden comparison against an empty directory cannot succeed
    let dir = std::env::temp_dir().join(format!("fockr-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = fockr(&["--suite", "grassmann", "--golden", dir.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let golden = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "tp1_residual_golden").unwrap();
    assert_eq!(golden["status"], "fail");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn record_then_compare_round_trips() {
    let dir = std::env::temp_dir().join(format!("fockr-record-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    assert_eq!(fockr(&["--suite", "grassmann", "--golden", d, "--record"]).status.code(), Some(0));
    assert_eq!(fockr(&["--suite", "grassmann", "--golden", d]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("fockr-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = fockr(&["--suite", "gamma", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(file, stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_is_the_default_format() {
    let out = fockr(&["--suite", "gamma", "--seed", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("suite gamma  seed 3"));
    assert!(text.contains("0 failed"));
}
