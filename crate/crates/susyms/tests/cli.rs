//! End-to-end runs of the binary: exit codes and output shape.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susyms")).args(args).env_remove("SUSYMS_CACHE_DIR").output().unwrap()
}

fn solution(name: &str) -> String {
    format!("{}/solutions/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn passing_commands_exit_zero() {
    for args in [
        vec!["tables"],
        vec!["verify-identities"],
        vec!["verify-extension"],
        vec!["classify", "--stage", "s1"],
        vec!["reduce", "--subalgebra", "L74"],
        vec!["classical", "symmetries"],
        vec!["elliptic", "F", "--phi", "0.5", "--k", "2^(-1/2)"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v = json(&o);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn verification_failures_exit_one() {
    let o = run(&["reduce", "--subalgebra", "G136"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["matches_printed"], false);
    let o = run(&["verify-solution", "--file", &solution("l72_quadratic_b.expr")]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"]["kind"], "zero-on-constraints");
}

#[test]
fn constraints_can_be_accepted() {
    let o = run(&["verify-solution", "--file", &solution("l72_quadratic_b.expr"), "--accept-constraints"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two_with_failure_json() {
    for args in [
        vec!["bogus"],
        vec!["classify", "--stage", "nope"],
        vec!["classify", "--stage", "s1", "--dedupe-reflection"],
        vec!["reduce", "--subalgebra", "L2"],
        vec!["verify-solution", "--file", "/nonexistent/file.expr"],
        vec!["elliptic", "E", "--phi", "0.5", "--k", "1"],
        vec!["--format", "latex", "reduce", "--subalgebra", "L74"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let v = json(&o);
        assert_eq!(v["passed"], false, "{args:?}");
        assert_eq!(v["error"]["kind"], "usage", "{args:?}");
    }
}

#[test]
fn numeric_domain_error_is_a_failed_check() {
    let dir = std::env::temp_dir().join(format!("susyms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("radicand.expr");
    std::fs::write(&f, "sqrt(y - 4*x)*theta1*theta2\n").unwrap();
    let o = run(&["verify-solution", "--file", f.to_str().unwrap(), "--numeric"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["domain_error"].as_str().unwrap().contains("(x, y)"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_latex_and_markdown_formats() {
    let o = run(&["--format", "text", "classify", "--stage", "s1"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("G7 = {P1 + mu P3 + nu Q1}"));
    let o = run(&["--format", "latex", "tables"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("\\begin{tabular}"));
    let o = run(&["--format", "markdown", "tables"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("| Q1 | Q1 | 0 | -P1 | -2P1 |"));
}

#[test]
fn cache_reuses_classification_output() {
    let dir = std::env::temp_dir().join(format!("susyms-cache-{}", std::process::id()));
    let go = || Command::new(env!("CARGO_BIN_EXE_susyms")).args(["classify", "--stage", "s"]).env("SUSYMS_CACHE_DIR", &dir).output().unwrap();
    let first = go();
    let files: Vec<_> = std::fs::read_dir(dir.join("v1")).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = go();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn floats_have_seventeen_significant_digits() {
    let o = run(&["elliptic", "E", "--phi", "1", "--k", "0"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("\"value\": 1.0000000000000000e+0"), "{text}");
}

#[test]
fn dispatch_reports_reduction_outcomes() {
    use susyms::cli::{execute, Command};
    assert!(execute(&Command::VerifyIdentities).unwrap().passed);
    assert!(execute(&Command::Reduce { subalgebra: "L74".into(), ansatz: "bodiless".into(), m: None }).unwrap().passed);
    assert!(!execute(&Command::Reduce { subalgebra: "G136".into(), ansatz: "bodiless".into(), m: None }).unwrap().passed);
}
