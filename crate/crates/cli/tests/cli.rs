use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn tdgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdgame")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tdgame-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn solve_seven_cycle() {
    let o = tdgame(&["solve", "--generator", "cycle 7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("gamma_tg  = 5"), "{text}");
}

#[test]
fn solve_writes_json() {
    let path = tmp("p4.json");
    let o = tdgame(&["solve", "--graph6", "Ch", "--json-out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["gamma_tg"], 3);
}

#[test]
fn edge_list_board() {
    let path = tmp("triangles.txt");
    fs::write(&path, "n 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n").unwrap();
    let o = tdgame(&["solve", "--edges", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("gamma_tg  = 4"));
}

#[test]
fn play_then_verify_round_trip() {
    let path = tmp("c10.json");
    let o = tdgame(&["play", "--generator", "cycle 10", "--adversary", "greedy", "--json-out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
    let v = tdgame(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("replay ok"));

    // An extra move is caught on replay.
    let mut trace: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let first = trace["moves"][0].clone();
    trace["moves"].as_array_mut().unwrap().push(first);
    let bad = tmp("c10-bad.json");
    fs::write(&bad, serde_json::to_string(&trace).unwrap()).unwrap();
    let v = tdgame(&["verify", bad.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn random_adversary_takes_the_seed_flag() {
    let a = tdgame(&["play", "--generator", "cycle 12", "--adversary", "random", "--seed", "4"]);
    let b = tdgame(&["play", "--generator", "cycle 12", "--adversary", "random(4)"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn sweep_graph6_file_reports_malformed_lines() {
    let path = tmp("corpus.g6");
    fs::write(&path, "FhCKG\nBw\n???\n").unwrap();
    let o = tdgame(&["sweep", "--graph6", path.to_str().unwrap(), "--adversary", "optimal", "--solver-check"]);
    let text = stdout(&o);
    assert!(text.contains("malformed line 3"), "{text}");
    // Malformed lines are reported and skipped; only verdicts set the code.
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("2 games"), "{text}");
}

#[test]
fn sweep_exhaustive_values() {
    let path = tmp("sweep.json");
    let o = tdgame(&["sweep", "--exhaustive", "5", "--values", "--json-out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn sweep_exhaustive_strategy() {
    let o = tdgame(&["sweep", "--exhaustive", "6", "--strategy", "general"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn onh_check_agrees() {
    let o = tdgame(&["onh-check", "--generator", "cycle 6", "--samples", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 violations"));
}

#[test]
fn interactive_over_pipes() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tdgame"))
        .args(["interactive", "--generator", "path 4"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass (tight)"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tdgame(&["solve"]).status.code(), Some(2));
    assert_eq!(tdgame(&["solve", "--graph6", "!!"]).status.code(), Some(2));
    assert_eq!(tdgame(&["solve", "--edges", "/nonexistent/edges"]).status.code(), Some(2));
    assert_eq!(tdgame(&["play", "--generator", "cycle 5", "--adversary", "clever"]).status.code(), Some(2));
    assert_eq!(tdgame(&["verify", "/nonexistent/trace.json"]).status.code(), Some(2));
}

#[test]
fn oversized_board_is_a_usage_error() {
    let o = tdgame(&["solve", "--generator", "cycle 70"]);
    assert_eq!(o.status.code(), Some(2));
}
