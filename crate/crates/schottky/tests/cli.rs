//! End-to-end checks of the `schottky` binary: report contents, JSON
//! byte-determinism across runs, and the exit-code contract (0 success,
//! 2 validation error, 3 inconclusive test).

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schottky"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("schottky-cli-test-{name}"));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn degrees_report_carries_the_genus_four_values() {
    let out = run(&["degrees", "--g", "4", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"13056\""));
    assert!(text.contains("\"208896\""));
}

#[test]
fn nullstellensatz_sizes_genus_one() {
    let out = run(&["nss-sizes", "--g", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"K\":\"1628770\""));
    assert!(text.contains("\"L\":\"1028790\""));
}

#[test]
fn bound_report_pins_the_genus_two_value() {
    let out = run(&["bound", "--g", "2", "--c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"num\":\"2109375\""));
    assert!(text.contains("\"den\":\"4\""));
}

#[test]
fn kp_test_accepts_a_genus_two_sample() {
    let out = run(&["kp-test", "--g", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"decision\":\"JACOBIAN_LIKE\""));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["kp-test", "--g", "2", "--seed", "7", "--output", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());

    let a = run(&["theta-eval", "--g", "3", "--seed", "9"]);
    let b = run(&["theta-eval", "--g", "3", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decomposable_input_exits_three() {
    let path = temp_file(
        "decomposable.json",
        r#"{"g":2,"re":[[0.0,0.0],[0.0,0.0]],"im":[[1.0,0.0],[0.0,1.0]]}"#,
    );
    let out = run(&["kp-test", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("\"decision\":\"INCONCLUSIVE\""));
}

#[test]
fn sample_round_trips_through_theta_eval() {
    let sampled = run(&["sample", "--g", "2", "--seed", "5"]);
    assert_eq!(sampled.status.code(), Some(0));
    let path = temp_file("sampled.json", &stdout(&sampled));

    let direct = run(&["theta-eval", "--g", "2", "--seed", "5"]);
    let via_file = run(&["theta-eval", "--input", path.to_str().unwrap()]);
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(via_file.status.code(), Some(0));
    assert_eq!(direct.stdout, via_file.stdout);
}

#[test]
fn relation_test_runs_from_a_polynomial_file() {
    let path = temp_file(
        "poly.json",
        r#"{"monomials":[{"exps":[1,0],"coef":[1.0,0.0]}]}"#,
    );
    let out = run(&[
        "relation-test",
        "--g",
        "1",
        "--input",
        path.to_str().unwrap(),
        "--samples",
        "4",
        "--seed",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"max_abs\":"));
}

#[test]
fn validation_failures_exit_two_with_coded_stderr() {
    let asym = temp_file(
        "asym.json",
        r#"{"g":2,"re":[[0.0,1.0],[0.0,0.0]],"im":[[1.0,0.0],[0.0,1.0]]}"#,
    );
    let out = run(&["theta-eval", "--input", asym.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[ASYMMETRY]:"));

    let out = run(&["theta-eval", "--input", "/nonexistent/tau.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[BAD_INPUT]:"));

    let out = run(&["degrees", "--g", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[BAD_INPUT]:"));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[BAD_ARGS]:"));
}

#[test]
fn genus_flag_must_match_input_file() {
    let path = temp_file(
        "g2.json",
        r#"{"g":2,"re":[[0.0,0.0],[0.0,0.0]],"im":[[1.0,0.0],[0.0,1.0]]}"#,
    );
    let out = run(&["rank-test", "--g", "3", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[BAD_INPUT]:"));
}
