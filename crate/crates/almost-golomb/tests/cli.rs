//! End-to-end checks of the command line contract: output formats and
//! exit codes.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_almost-golomb"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn gen_bfile_prefix() {
    let (code, stdout, _) = run(&["gen", "--order", "2", "--count", "5", "--format", "bfile"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1 1\n2 2\n3 2\n4 3\n5 4\n");
}

#[test]
fn gen_golomb_prefix() {
    let (code, stdout, _) = run(&["gen", "--golomb", "--count", "4", "--format", "bfile"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1 1\n2 2\n3 2\n4 3\n");
}

#[test]
fn verify_definition_passes() {
    let (code, stdout, _) = run(&[
        "verify",
        "--order",
        "7",
        "--count",
        "5000",
        "--suite",
        "definition",
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid JSON bundle");
    assert_eq!(json["suite"], "definition");
    assert_eq!(json["reports"][0]["pass"], true);
}

#[test]
fn verify_denesting_small() {
    let (code, _, _) = run(&[
        "verify",
        "--order",
        "3",
        "--count",
        "20000",
        "--suite",
        "denesting",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn inapplicable_suite_is_exit_3() {
    let (code, _, _) = run(&[
        "verify",
        "--order",
        "7",
        "--count",
        "1000",
        "--suite",
        "denesting",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn usage_error_is_exit_2() {
    let (code, _, _) = run(&["gen", "--bogus-flag"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["dfao", "--which", "no-such-automaton", "--eval", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn dfao_eval_and_dump() {
    let (code, stdout, _) = run(&["dfao", "--which", "r3-eps", "--eval", "17"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1");

    let (code, stdout, _) = run(&["dfao", "--which", "r5-U", "--eval", "13"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "(1,0)");

    let (code, stdout, _) = run(&["dfao", "--which", "r4-eps2", "--dump"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 29);
    // layout: state output d0 d1 d2 d3
    for row in stdout.lines() {
        assert_eq!(row.split(' ').count(), 6);
    }
}

#[test]
fn dfao_geometric_orbit() {
    let (code, stdout, _) = run(&[
        "dfao",
        "--which",
        "r5-U",
        "--reconstructed",
        "--geometric",
        "1,,12",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("period 2"), "got: {stdout}");
}

#[test]
fn analyze_ratios_pass() {
    let (code, _, _) = run(&["analyze", "ratios", "--order", "3", "--kmax", "8"]);
    assert_eq!(code, 0);
}

#[test]
fn analyze_oscillation_tsv() {
    let (code, stdout, _) = run(&[
        "analyze",
        "oscillation",
        "--order",
        "2",
        "--count",
        "20000",
        "--windows",
        "4",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("x\tmin\tmax\n"));
    assert_eq!(stdout.lines().count(), 5);
}

#[test]
fn meta_small_table() {
    let (code, stdout, _) = run(&["meta", "--max-order", "12", "--table1"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("M(r): 2 3 3 3 3 4 4 4 5 5 5"));
}
