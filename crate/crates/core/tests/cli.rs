use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-lines")).args(args).output().expect("spawn cli")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn write_all_lines(dir: &Path) -> String {
    let path = dir.join("all.json");
    std::fs::write(&path, r#"{"q":3,"n":2,"lines":[[0,1],[1,1],[2,1]]}"#).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn lines_lists_the_universe() {
    let v = json(&["lines", "--q", "3", "--n", "2"]);
    assert_eq!(v, serde_json::json!([[0, 1], [1, 1], [2, 1]]));
    let v = json(&["lines", "--q", "5", "--n", "3"]);
    assert_eq!(v.as_array().unwrap().len(), 25);
}

#[test]
fn sample_is_deterministic() {
    let a = stdout(&["sample", "--q", "5", "--n", "3", "--seed", "7", "--no-meta"]);
    let b = stdout(&["sample", "--q", "5", "--n", "3", "--seed", "7", "--no-meta"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["q"], 5);
    for line in v["lines"].as_array().unwrap() {
        assert_eq!(line[2], 1);
    }
}

#[test]
fn build_writes_dimacs_with_expected_edge_count() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_all_lines(dir.path());
    let out = dir.path().join("g.dimacs");
    stdout(&["build", "--in", &input, "--out", out.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out).unwrap();
    let g = cayley_lines::io::parse_dimacs(&text).unwrap();
    assert_eq!(g.vertices, 9);
    // q^n |S| / 2 with |S| = 6
    assert_eq!(g.edges.len(), 27);
}

#[test]
fn aut_on_the_full_line_set() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_all_lines(dir.path());
    let v = json(&["aut", "--in", &input, "--no-meta"]);
    assert_eq!(v["order"], "1296");
    assert_eq!(v["equals_K"], false);
    assert_eq!(v["dichotomy"], "ii");
    assert_eq!(v["complete"], true);
    assert!(v.get("meta").is_none());
}

#[test]
fn aut_on_a_rigid_instance() {
    let v = json(&["aut", "--q", "5", "--n", "3", "--seed", "1"]);
    assert_eq!(v["order"], "500");
    assert_eq!(v["equals_K"], true);
    assert_eq!(v["dichotomy"], "i");
    assert!(v["meta"].is_object());
}

#[test]
fn chi_and_distinguish() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_all_lines(dir.path());
    let v = json(&["chi", "--in", &input, "--no-meta"]);
    assert_eq!(v["exact"], 3);
    assert_eq!(v["proper"], true);
    let v = json(&["distinguish", "--in", &input, "--no-meta"]);
    assert_eq!(v["proper"], true);
    assert_eq!(v["distinguishing"], false);
    assert!(v["witness"].is_array());
}

#[test]
fn bounds_reports() {
    let v = json(&["bounds", "--q", "5", "--n", "6", "--no-meta"]);
    assert_eq!(v["union_bound"]["holds"], true);
    assert_eq!(v["union_bound"]["gl_holds"], true);
    let v = json(&["bounds", "--k", "4", "--no-meta"]);
    assert_eq!(v["order_bound"]["q"], 5);
    assert_eq!(v["order_bound"]["check"], true);
}

#[test]
fn experiment_sweep_and_trials() {
    let csv = stdout(&["experiment", "--q", "3", "--n", "2", "--sweep-all-subsets", "--format", "csv", "--no-meta"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[1..].iter().all(|r| r.contains(",true,")));

    let csv = stdout(&["experiment", "--q", "5", "--n", "3", "--trials", "3", "--seed", "4", "--format", "csv", "--no-meta"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], cayley_lines::bounds::TRIAL_CSV_HEADER);
    assert_eq!(rows.len(), 4);
    let parallel = stdout(&[
        "experiment", "--q", "5", "--n", "3", "--trials", "3", "--seed", "4", "--format", "csv", "--no-meta", "--jobs", "3",
    ]);
    assert_eq!(csv, parallel);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lines", "--q", "4", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--q", "3", "--n", "2", "--seed", "1", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["aut", "--q", "3", "--n", "2"]).status.code(), Some(2));
    let out = run(&["aut", "--q", "3", "--n", "2", "--seed", "1", "--p", "1", "--budget-nodes", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stdout.is_empty());
}
