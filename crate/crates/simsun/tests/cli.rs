//! End-to-end tests of the command-line surface.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simsun"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn map_phi_worked_example() {
    assert_eq!(
        stdout(&["map", "phi", "7 5 6 8 2 3 4 1"]),
        "UUDUUDDUDDUUDUDD"
    );
    assert_eq!(
        stdout(&["map", "phi", "--inverse", "UUDUUDDUDDUUDUDD"]),
        "7 5 6 8 2 3 4 1"
    );
}

#[test]
fn count_and_seq() {
    assert_eq!(stdout(&["count", "--n", "4", "--avoid", "1-2-3"]), "6");
    assert_eq!(
        stdout(&["count", "--n", "4", "--avoid", "1-2-3", "--method", "brute"]),
        "6"
    );
    assert_eq!(stdout(&["seq", "secondary", "0..6"]), "1 1 2 4 8 17 37");
    assert_eq!(stdout(&["seq", "euler", "1..6"]), "1 1 2 5 16 61");
    assert_eq!(stdout(&["seq", "catalan", "5"]), "42");
}

#[test]
fn enumerate_lines_and_json() {
    let lines = stdout(&["enumerate", "--n", "4", "--avoid", "1-2-3"]);
    assert_eq!(
        lines.lines().collect::<Vec<_>>(),
        vec!["2 1 4 3", "2 4 1 3", "3 1 4 2", "3 4 1 2", "4 1 3 2", "4 2 3 1"]
    );
    let json = stdout(&["enumerate", "--n", "4", "--avoid", "1-2-3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["count"], 6);
    assert_eq!(doc["permutations"][0], "2 1 4 3");
}

#[test]
fn fertility_gaps() {
    assert_eq!(stdout(&["fertility", "2 1 3"]), "1 2 3");
    assert_eq!(stdout(&["fertility", "2 1 3", "--avoid", "1-2-3"]), "1 2");
    // a non-simsun argument is a domain error
    let out = run(&["fertility", "3 2 1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn every_bijection_echoes_through_inverse() {
    let cases = [
        ("krar132", "3 4 2 1"),
        ("krar231", "1 4 3 2"),
        ("krar312", "2 3 4 1"),
        ("krar213", "4 3 1 2"),
        ("phi", "2 3 4 1"),
        ("theta", "2 3 4 1"),
        ("rs213-motzkin", "1 4 2 3"),
        ("psi", "4 1 3 2"),
    ];
    for (name, object) in cases {
        let image = stdout(&["map", name, object]);
        let back = stdout(&["map", name, "--inverse", &image]);
        assert_eq!(back, object, "{name}");
    }
    // path-to-path and path-to-sequence maps
    let m = stdout(&["map", "callan", "UUDDUUDD"]);
    assert_eq!(stdout(&["map", "callan", "--inverse", &m]), "UUDDUUDD");
    let a = stdout(&["map", "adm", "UHUDHUUDHDDHUHD"]);
    assert_eq!(a, "1,2,0,1,2,3,4,5,4,2,3,4,3,4,1");
    assert_eq!(stdout(&["map", "adm", "--inverse", &a]), "UHUDHUUDHDDHUHD");
}

#[test]
fn verify_suites_exit_codes() {
    let out = run(&["verify", "--suite", "succession", "--n-max", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok"));

    let out = run(&["verify", "--suite", "no-such-suite", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tables_run_clean() {
    let out = run(&["tables", "--n-max", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("contain-all-six"));

    let json = stdout(&["tables", "--n-max", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(doc["records"].as_array().unwrap().len() >= 62);
}

#[test]
fn bad_arguments_exit_two() {
    let out = run(&["count", "--n", "four"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    // 132 contains the pattern it should avoid
    let out = run(&["map", "phi", "1 3 2"]);
    assert_eq!(out.status.code(), Some(1));
    // malformed permutation
    let out = run(&["map", "phi", "1 1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_objects_round_trip() {
    assert_eq!(stdout(&["map", "psi", "e"]), "e");
    assert_eq!(stdout(&["map", "adm", "e"]), "e");
    assert_eq!(stdout(&["map", "krar132", "e"]), "e");
}
