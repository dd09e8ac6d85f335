use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seatweight"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn apportion_prints_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "ex.inst", "votes: 60, 30, 10\nweights: 10, 6, 4, 2\n");
    let o = run(&["apportion", "-m", "adams-w", "-i", &inst]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("assignment: (1,2,3,1)"), "{}", stdout(&o));

    let o = run(&["apportion", "-m", "greedy", "-i", &inst, "--json", "--trace"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["assignment"], serde_json::json!([1, 2, 1, 3]));
    assert_eq!(v["trace"]["rounds"].as_array().unwrap().len(), 4);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "a.inst", "votes: 1, 1\nweights: 97, 1, 1, 1\n");
    let o = run(&["check", "-i", &inst, "-a", "1,1,2,2", "--axioms", "wlq-o"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", "-i", &inst, "-a", "1,1,2,2", "--axioms", "wlq-o,wlq-x-r"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    let o = run(&["check", "-i", &inst, "-a", "1,1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let none = write(dir.path(), "n.inst", "votes: 1, 1, 1\nweights: 3, 2, 1\n");
    let some = write(dir.path(), "s.inst", "votes: 1, 1\nweights: 97, 1, 1, 1\n");
    for engine in ["dp", "brute-force"] {
        assert_eq!(run(&["solve", "-i", &none, "-t", "wuq-o", "--engine", engine]).status.code(), Some(1));
        assert_eq!(run(&["solve", "-i", &some, "-t", "wlq-o", "--engine", engine]).status.code(), Some(0));
    }
    let o = run(&["solve", "-i", &some, "-t", "wlq-x", "--engine", "two-party"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["solve", "-i", &none, "-t", "wlq-x", "--engine", "two-party"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "-i", &none, "-t", "wlq-x", "--max-states", "2"]).status.code(), Some(3));
    assert_eq!(
        run(&["solve", "-i", &none, "-t", "wlq-x", "--engine", "brute-force", "--max-assignments", "5"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["solve", "-i", &none, "-t", "wef1"]).status.code(), Some(2));
}

#[test]
fn search_requires_seed_for_random_sampling() {
    assert_eq!(run(&["search", "-c", "wlq-x"]).status.code(), Some(2));
    let o = run(&["search", "-c", "wlq-x", "--seed", "3", "--min-parties", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["counterexample"]["certificate"]["NoAssignment"].is_object(), "{v}");
    let o = run(&["search", "-c", "wlq-x", "--strategy", "exhaustive", "--budget", "0"]);
    assert!(stdout(&o).contains("no counterexample"));
}

#[test]
fn hm_replay_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "g.inst", "votes: 5, 4, 1\nweights: 4, 3, 2\n");
    let o = run(&["hm", "-m", "greedy", "--mode", "min", "-i", &inst, "--extra", "1"]);
    assert!(stdout(&o).contains("party 3 drops from 2 to 0"), "{}", stdout(&o));
    let o = run(&["hm", "-m", "greedy", "--mode", "min", "-i", &inst, "--extra", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["hm", "-m", "adams-w"]).status.code(), Some(2));
    let o = run(&["hm", "-m", "dhondt-w", "--mode", "min", "--seed", "1", "--budget", "300"]);
    assert!(stdout(&o).contains("no violation found"));
}

#[test]
fn ingest_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let committees = write(dir.path(), "c.csv", "committee,size\nFinance,12\nDefence,15\nHealth,9\n");
    let parties = write(dir.path(), "p.csv", "party,seats\nA,300\nB,200\n");
    let o = run(&["ingest", "--committees", &committees, "--parties", &parties, "--period", "p1"]);
    assert_eq!(o.status.code(), Some(0));
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    fs::write(corpus.join("p1.inst"), o.stdout).unwrap();
    write(&corpus, "historical.csv", "period,seat,party\np1,Finance,A\np1,Defence,B\np1,Health,A\n");

    let out = dir.path().join("report.json");
    let o = run(&[
        "report",
        "-c",
        corpus.to_str().unwrap(),
        "-m",
        "greedy,adams-w",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = stdout(&o);
    assert!(table.contains("historical") && table.contains("Max δ"), "{table}");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(json["columns"], serde_json::json!(["greedy", "adams-w", "historical"]));
}
