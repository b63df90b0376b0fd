use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stochprobe"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn generate_is_deterministic_and_schema_valid() {
    let dir = tempfile::tempdir().unwrap();
    for _ in 0..2 {
        let out = run(&["generate", "--family", "all_types", "--k", "3", "--copies", "3", "--budget", "5", "--p", "0.5"], dir.path());
        assert_eq!(code(&out), 0);
    }
    let a = run(&["generate", "--family", "xos", "--n", "7", "--seed", "4"], dir.path());
    let b = run(&["generate", "--family", "xos", "--n", "7", "--seed", "4"], dir.path());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["n"], 7);
    assert_eq!(doc["probs"].as_array().unwrap().len(), 7);
    assert_eq!(doc["function"]["type"], "xos");
    assert_eq!(doc["constraint"]["type"], "cardinality");
    assert_eq!(doc["metadata"]["seed"], 4);
}

#[test]
fn generate_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["generate", "--family", "bogus"], dir.path())), 2);
    assert_eq!(code(&run(&["generate", "--family", "partition"], dir.path())), 2);
    assert_eq!(code(&run(&["generate", "--family", "cut", "--n", "30"], dir.path())), 2);
}

#[test]
fn gap_with_theorems_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(&["generate", "--family", "coverage", "--n", "7", "--seed", "1", "--budget", "3", "--out", "cov.json"], d)), 0);
    assert_eq!(code(&run(&["generate", "--family", "xos_tree", "--k", "2", "--depth", "2", "--variant", "cardinality", "--out", "tree.json"], d)), 0);
    let out = run(&["gap", "cov.json", "tree.json", "--assert-theorems", "--csv", "rows.csv"], d);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["version"], 1);
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    let cov = &entries[0]["report"];
    assert!(cov["nonadap_opt"].as_f64().unwrap() >= cov["adap_opt"].as_f64().unwrap() / 3.0 - 1e-9);
    assert!(entries[1]["report"]["xos_alg1"].is_number());

    assert_eq!(code(&run(&["gap", "cov.json", "--csv", "rows.csv"], d)), 0);
    let rows = std::fs::read_to_string(d.join("rows.csv")).unwrap();
    let lines: Vec<&str> = rows.lines().collect();
    assert_eq!(lines.len(), 4, "one header and three rows: {rows}");
    assert!(lines[0].starts_with("instance,digest"));
}

#[test]
fn gap_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(&["generate", "--family", "xos_tree", "--k", "4", "--depth", "2", "--out", "big.json"], d)), 0);
    assert_eq!(code(&run(&["gap", "big.json"], d)), 3);
    std::fs::write(d.join("bad.json"), r#"{"version": 1, "n": 2}"#).unwrap();
    assert_eq!(code(&run(&["gap", "bad.json"], d)), 2);
    assert_eq!(code(&run(&["gap", "missing.json"], d)), 2);
}

#[test]
fn batch_output_is_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::create_dir(d.join("batch")).unwrap();
    for (name, seed) in [("c.json", "3"), ("a.json", "1"), ("b.json", "2")] {
        let path = format!("batch/{name}");
        assert_eq!(code(&run(&["generate", "--family", "cut", "--n", "6", "--seed", seed, "--out", &path], d)), 0);
    }
    let out = run(&["gap", "--batch", "batch", "--assert-theorems"], d);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<String> = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["instance"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 3);
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(&["verify", "--suite", "stem", "--count", "10000", "--seed", "7"], d)), 0);
    assert_eq!(code(&run(&["verify", "--suite", "factor3", "--count", "200", "--seed", "1"], d)), 0);
    assert_eq!(code(&run(&["verify", "--suite", "all", "--count", "20", "--seed", "5"], d)), 0);
    assert_eq!(code(&run(&["verify", "--suite", "unknown"], d)), 2);
}
