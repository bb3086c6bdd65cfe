use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn edgp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("one JSON object")
}

#[test]
fn solve_t3_template() {
    let dir = tempfile::tempdir().unwrap();
    let o = edgp(dir.path(), &["gadget", "emit", "--kind", "T3", "--out", "t3.graph"]);
    assert_eq!(code(&o), 0);
    let o = edgp(dir.path(), &["solve", "t3.graph", "--out", "x.real"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("REALIZABLE"));
    let o = edgp(dir.path(), &["verify", "t3.graph", "x.real"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn partition_no_instance() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&edgp(dir.path(), &["reduce", "partition", "--values", "8,9", "--out", "p.graph"])), 0);
    let o = edgp(dir.path(), &["--json", "solve", "p.graph"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["status"], "UNREALIZABLE");
    assert_eq!(code(&edgp(dir.path(), &["reduce", "partition", "--values", "1,2,3", "--out", "q.graph"])), 0);
    assert_eq!(code(&edgp(dir.path(), &["solve", "q.graph"])), 0);
}

#[test]
fn approximate_boundary_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = edgp(dir.path(), &["--json", "cycle-decide", "--weights", "8,9", "--delta", "1/8"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["positions"], serde_json::json!(["0", "9", "0"]));
    assert_eq!(code(&edgp(dir.path(), &["cycle-decide", "--weights", "8,9", "--delta", "1/34"])), 1);

    edgp(dir.path(), &["reduce", "partition", "--values", "8,9", "--out", "p.graph"]);
    fs::write(dir.path().join("y.real"), "dim 1\nx 1 0\nx 2 9\nx 3 0\n").unwrap();
    assert_eq!(code(&edgp(dir.path(), &["verify-approx", "p.graph", "y.real", "--eps", "0.125"])), 0);
    assert_eq!(code(&edgp(dir.path(), &["verify-approx", "p.graph", "y.real", "--eps", "0.1"])), 1);
    assert_eq!(code(&edgp(dir.path(), &["verify", "p.graph", "y.real"])), 1);
    let o = edgp(dir.path(), &["cycle-decide", "--weights", "8,9", "--delta", "1/20", "--eps", "1/10"]);
    assert_eq!(stdout(&o), "INDETERMINATE\n");
}

#[test]
fn rounding_command() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.graph"), "n 3\ne 1 2 1\ne 2 3 2\ne 1 3 3\n").unwrap();
    fs::write(dir.path().join("y.real"), "dim 1\nx 1 0\nx 2 1.05\nx 3 3.1\n").unwrap();
    let o = edgp(dir.path(), &["round", "c.graph", "y.real", "--out", "x.real"]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(dir.path().join("x.real")).unwrap(), "dim 1\nx 1 0\nx 2 1\nx 3 3\n");
}

#[test]
fn sat_reduction_with_witness_map() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.cnf"), "p cnf 3 1\n1 2 3 0\n").unwrap();
    let o = edgp(
        dir.path(),
        &["reduce", "sat", "--dimacs", "f.cnf", "--out", "g.graph", "--witness", "w.json"],
    );
    assert_eq!(code(&o), 0);
    let w: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("w.json")).unwrap()).unwrap();
    assert_eq!(w.as_object().unwrap().len(), 7);
    fs::write(dir.path().join("x.real"), w["111"].as_str().unwrap()).unwrap();
    assert_eq!(code(&edgp(dir.path(), &["verify", "g.graph", "x.real"])), 0);
    let o = edgp(dir.path(), &["--json", "solve", "g.graph", "--enumerate"]);
    assert_eq!(json(&o)["realizations"].as_array().unwrap().len(), 7);
}

#[test]
fn ambiguous_chain() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("sat.cnf"), "p cnf 1 1\n1 0\n").unwrap();
    fs::write(dir.path().join("unsat.cnf"), "p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let o = edgp(dir.path(), &["ambiguate", "sat.cnf", "--out", "psi.cnf", "--cert", "cert.txt"]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(dir.path().join("cert.txt")).unwrap(), "v1 1\nv2 1\n");
    let o = edgp(dir.path(), &["--json", "models", "psi.cnf"]);
    assert_eq!(json(&o)["count"], 2);
    assert_eq!(code(&edgp(dir.path(), &["desugar", "psi.cnf", "--out", "d.cnf"])), 0);

    for (name, expected) in [("sat.cnf", 0), ("unsat.cnf", 1)] {
        let o = edgp(dir.path(), &["pipeline", name, "--out", "g.graph", "--cert", "x.real"]);
        assert_eq!(code(&o), 0);
        assert_eq!(code(&edgp(dir.path(), &["verify", "g.graph", "x.real"])), 0);
        assert_eq!(code(&edgp(dir.path(), &["ambiguous", "g.graph", "x.real"])), expected, "{name}");
    }
}

#[test]
fn lifting_and_dimension() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("e.graph"), "n 2\ne 1 2 1\n").unwrap();
    let o = edgp(dir.path(), &["--json", "lift", "--gadget", "saxe", "e.graph", "r.graph"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["graph"]["vertices"], 4);
    let o = edgp(dir.path(), &["--json", "lift", "--gadget", "clique", "--dim", "3", "e.graph", "c.graph"]);
    assert_eq!(json(&o)["graph"]["vertices"], 4);
    let o = edgp(dir.path(), &["--json", "dimension", "c.graph"]);
    assert_eq!(json(&o)["dimension"], "3");
    fs::write(dir.path().join("bad.graph"), "n 3\ne 1 2 1\ne 2 3 1\ne 1 3 3\n").unwrap();
    assert_eq!(code(&edgp(dir.path(), &["dimension", "bad.graph"])), 1);
    fs::write(dir.path().join("w.graph"), "n 2\ne 1 2 4\n").unwrap();
    let o = edgp(dir.path(), &["--json", "expand-weights", "w.graph"]);
    assert_eq!(json(&o)["graph"]["vertices"], 5);
}

#[test]
fn parse_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.graph"), "# comment\nn 2\ne 2 1 6/4\n").unwrap();
    let o = edgp(dir.path(), &["parse", "g.graph"]);
    assert_eq!(stdout(&o), "n 2\ne 2 1 3/2\n");
    fs::write(dir.path().join("f.cnf"), "c x\np cnf 2 1\n1\n-2 0\n").unwrap();
    assert_eq!(stdout(&edgp(dir.path(), &["parse", "f.cnf"])), "p cnf 2 1\n1 -2 0\n");
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&edgp(dir.path(), &["no-such-command"])), 2);
    assert_eq!(code(&edgp(dir.path(), &["solve", "missing.graph"])), 2);
    assert_eq!(code(&edgp(dir.path(), &["reproduce", "--suite", "nope"])), 2);
    fs::write(dir.path().join("bad.cnf"), "p cnf 1 1\n2 0\n").unwrap();
    let o = edgp(dir.path(), &["models", "bad.cnf"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
}

#[test]
fn reproduce_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "reproduce", "--suite", "thm-3sat", "--trials", "30"];
    let a = edgp(dir.path(), &args);
    let b = edgp(dir.path(), &args);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "3"]);
    let c = edgp(dir.path(), &parallel);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 1979);
    assert_eq!(v["rng"], "ChaCha8");
    let other = edgp(dir.path(), &["--json", "reproduce", "--suite", "thm-3sat", "--trials", "30", "--seed", "7"]);
    assert_eq!(json(&other)["seed"], 7);
}

#[test]
fn reproduce_reports_failures_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = edgp(dir.path(), &["reproduce", "--suite", "table"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL  row (1,1,1)"));
}
