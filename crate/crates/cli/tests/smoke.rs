//! End-to-end command tests: stable exit codes, the documented output
//! lines, and file round-trips through `analyze`.

use std::io::Write;
use std::process::{Command, Stdio};

fn debate() -> Command {
    Command::new(env!("CARGO_BIN_EXE_debate"))
}

fn run_ok(args: &[&str]) -> (String, String, i32) {
    let out = debate().args(args).output().expect("spawn");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn minimum_debate_prints_the_worked_outcome() {
    let (stdout, _, code) =
        run_ok(&["run", "--cut", "minimum", "--a", "minimum", "--b", "epsilon", "--f", "10,8,3,27"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("B wins: u=2"), "stdout: {stdout}");
    assert!(stdout.contains("phi: 1:0 2:1 3:2 4:1 5:4 6:1"), "stdout: {stdout}");
}

#[test]
fn star_debate_prints_lasso_and_blame() {
    let (stdout, _, code) = run_ok(&["run", "--cut", "star", "--a", "star", "--b", "star-refuter"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Lasso(3,4); blame: A"), "stdout: {stdout}");
}

#[test]
fn exhausted_budget_exits_two() {
    let (stdout, _, code) = run_ok(&[
        "run",
        "--cut",
        "ackermann-bound",
        "--f",
        "identity",
        "--a",
        "soloviev",
        "--b",
        "pr:succ",
        "--budget",
        "40",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.contains("budget exhausted after 40 steps"));
}

#[test]
fn usage_errors_exit_one() {
    let (_, _, code) = run_ok(&["run", "--cut", "minimum", "--a", "minimum", "--f", "1"]);
    assert_eq!(code, 1);
    let (_, stderr, code) =
        run_ok(&["run", "--cut", "minimum", "--a", "nope", "--b", "epsilon", "--f", "1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown strategy"));
}

#[test]
fn every_written_file_reads_back_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("star.json");
    let phi = dir.path().join("star.phi");
    let dot = dir.path().join("star.dot");
    let (_, _, code) = run_ok(&[
        "run",
        "--cut",
        "star",
        "--a",
        "star",
        "--b",
        "star-refuter",
        "--out",
        json.to_str().unwrap(),
        "--phi",
        phi.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.contains("subgraph cluster_s"), "dot: {dot_text}");

    let (stdout, _, code) =
        run_ok(&["analyze", "--trace", json.to_str().unwrap(), "--at", "5", "--omega"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("valid: yes"));
    assert!(stdout.contains("V(5) = {4,2,0}"));
    assert!(stdout.contains("partition: [3,4][1,2][0,0]"));
    assert!(stdout.contains("chain: 0, 2, 6, 10, +4...; parity even; blame A"));
    assert!(stdout.contains("choose n=2 -> V(w+1) = {w, 1, 0}"));

    let (stdout, _, code) = run_ok(&["analyze", "--trace", phi.to_str().unwrap(), "--omega"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("chain: 0, 2, 6, 10, +4..."));
}

#[test]
fn omega_on_a_terminating_trace_is_refused_gracefully() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("min.json");
    let (_, _, code) = run_ok(&[
        "run",
        "--cut",
        "minimum",
        "--a",
        "minimum",
        "--b",
        "epsilon",
        "--f",
        "10,8,3,27",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (stdout, _, code) = run_ok(&["analyze", "--trace", json.to_str().unwrap(), "--omega"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("not a lasso trace"));
}

#[test]
fn scripted_play_loses_to_the_minimum_defender() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("play.json");
    let mut child = debate()
        .args([
            "play",
            "--cut",
            "minimum",
            "--as",
            "abe",
            "--vs",
            "minimum",
            "--f",
            "10,8,3,27",
            "--out",
            out.to_str().unwrap(),
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(b"1\n2\n3\n").unwrap();
    let output = child.wait_with_output().unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout.contains("Eloise wins."), "stdout: {stdout}");
    // Bad input re-prompts instead of crashing.
    let mut child = debate()
        .args([
            "play",
            "--cut",
            "minimum",
            "--as",
            "abe",
            "--vs",
            "minimum",
            "--f",
            "10,8,3,27",
            "--out",
            out.to_str().unwrap(),
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(b"bogus\nq\n").unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("not an index: bogus"), "stdout: {stdout}");
    assert!(stdout.contains("still running"));
    // The quit trace reads back.
    let (stdout, _, code) = run_ok(&["analyze", "--trace", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("valid: yes"));
}

#[test]
fn formula_files_are_playable() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lem.sexpr");
    std::fs::write(&file, "(or (and (leaf 0) (leaf 1)) (leaf 1) (leaf 0))").unwrap();
    let dot = dir.path().join("t.json");
    // Copycat needs the base formula; give it directly.
    let base = dir.path().join("base.sexpr");
    std::fs::write(&base, "(and (leaf 0) (leaf 1))").unwrap();
    let mut child = debate()
        .args([
            "play",
            "--cut",
            base.to_str().unwrap(),
            "--as",
            "abe",
            "--vs",
            "copycat",
            "--out",
            dot.to_str().unwrap(),
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(b"0\n1\n0\n").unwrap();
    let output = child.wait_with_output().unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("Eloise wins."), "stdout: {stdout}");
}

#[test]
fn env_var_sets_the_default_budget() {
    let out = debate()
        .args([
            "run",
            "--cut",
            "ackermann-bound",
            "--f",
            "identity",
            "--a",
            "soloviev",
            "--b",
            "pr:succ",
        ])
        .env("DEBATE_BUDGET", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("budget exhausted after 12 steps"), "stdout: {stdout}");
}
