//! End-to-end checks of the command-line driver: flag handling, exit
//! codes, stream formats, and split semantics.

use std::collections::HashSet;
use std::io::Write;
use std::process::{Command, Stdio};

fn hamgen() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hamgen"))
}

fn run_lines(args: &[&str]) -> (Vec<String>, String, i32) {
    let out = hamgen().args(args).output().expect("spawn hamgen");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    (
        stdout.lines().map(str::to_owned).collect(),
        stderr,
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn generate_streams_graph6_and_reports_to_stderr() {
    let (lines, stderr, code) = run_lines(&["generate", "-n", "6", "-k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(lines.len(), 12);
    assert!(stderr.contains("emitted=12"));
    for l in &lines {
        let g = hamgen::graph6::decode(l.as_bytes()).unwrap();
        assert_eq!(g.n(), 6);
    }
}

#[test]
fn count_only_equals_line_count() {
    let (lines, _, _) = run_lines(&["generate", "-n", "7", "--non-hamiltonian"]);
    let (count, _, _) = run_lines(&["generate", "-n", "7", "--non-hamiltonian", "--count-only"]);
    assert_eq!(count, vec![lines.len().to_string()]);
}

#[test]
fn mode_flags_are_exclusive() {
    let (_, stderr, code) = run_lines(&["generate", "-n", "6", "-k", "1", "--all"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("exactly one of"));
    let (_, _, code) = run_lines(&["generate", "-n", "6"]);
    assert_eq!(code, 2);
}

#[test]
fn bad_configuration_is_usage_error() {
    let (_, _, code) = run_lines(&["generate", "-n", "6", "-k", "1", "-g", "9"]);
    assert_eq!(code, 2);
    let (_, _, code) = run_lines(&["generate", "-n", "2", "-k", "1"]);
    assert_eq!(code, 2);
    let (_, _, code) = run_lines(&["generate", "-n", "6", "-k", "1", "--mod", "3/2"]);
    assert_eq!(code, 2);
}

#[test]
fn shares_concatenate_to_the_full_run() {
    let (whole, _, _) = run_lines(&["generate", "-n", "8", "-k", "1"]);
    let whole: HashSet<String> = whole.into_iter().collect();
    assert_eq!(whole.len(), 482);
    let mut union = HashSet::new();
    for res in 0..4 {
        let share = format!("{res}/4");
        let (part, _, code) = run_lines(&["generate", "-n", "8", "-k", "1", "--mod", &share]);
        assert_eq!(code, 0);
        for l in part {
            assert!(union.insert(l), "duplicate across shares");
        }
    }
    assert_eq!(union, whole);
}

#[test]
fn workers_env_preserves_the_output_set() {
    let (serial, _, _) = run_lines(&["generate", "-n", "8", "--non-hamiltonian"]);
    let serial: HashSet<String> = serial.into_iter().collect();
    let out = hamgen()
        .args(["generate", "-n", "8", "--non-hamiltonian"])
        .env("HAMGEN_WORKERS", "3")
        .output()
        .expect("spawn hamgen");
    assert!(out.status.success());
    let parallel: HashSet<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect();
    assert_eq!(parallel, serial);
}

#[test]
fn adj_format_is_parsable() {
    let (lines, _, code) = run_lines(&["generate", "-n", "4", "--all", "--format", "adj"]);
    assert_eq!(code, 0);
    let headers = lines.iter().filter(|l| l.starts_with("graph n=")).count();
    assert_eq!(headers, 11);
}

#[test]
fn count_hc_reads_stdin_and_saturates() {
    let mut child = hamgen()
        .args(["count-hc", "--cap", "5"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn hamgen");
    let k4 = hamgen::graph6::encode_string(&hamgen::graph::Graph::new_complete(4).unwrap());
    let k6 = hamgen::graph6::encode_string(&hamgen::graph::Graph::new_complete(6).unwrap());
    let c10 = hamgen::graph6::encode_string(&hamgen::graph::Graph::new_cycle(10).unwrap());
    child
        .stdin
        .take()
        .unwrap()
        .write_all(format!("{k4}\n{k6}\n{c10}\n").as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), vec!["3", ">=5", "1"]);
}

#[test]
fn count_hc_rejects_malformed_lines() {
    let mut child = hamgen()
        .args(["count-hc"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hamgen");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"Bw\nnot graph6 at all\x01\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn verify_reports_pass_and_unknown_suite() {
    let (lines, _, code) = run_lines(&["verify", "schwenk", "--max-n", "9"]);
    assert_eq!(code, 0);
    assert!(lines.iter().any(|l| l.contains("overall PASS")));
    let (_, stderr, code) = run_lines(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"));
}
