//! Spawned-binary checks: exit codes, diagnostics, and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn keller(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keller"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    let file = fixture("counterexample_f3.map");
    let file = file.to_str().unwrap();

    let both = keller(&["analyze", file]);
    assert_eq!(exit_code(&both), 2, "{}", String::from_utf8_lossy(&both.stderr));

    let njc = keller(&["analyze", file, "--variant", "njc"]);
    assert_eq!(exit_code(&njc), 2);
    let stdout = String::from_utf8_lossy(&njc.stdout);
    assert!(stdout.contains("NJC"), "{stdout}");
    assert!(stdout.contains("counterexample"), "{stdout}");

    let cjc = keller(&["analyze", file, "--variant", "cjc"]);
    assert_eq!(exit_code(&cjc), 0);
}

#[test]
fn identity_map_is_consistent() {
    let file = fixture("identity_q.map");
    let out = keller(&["analyze", file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("invertible: true"), "{stdout}");
}

#[test]
fn malformed_files_exit_one_with_a_diagnostic() {
    let file = fixture("malformed.map");
    let out = keller(&["analyze", file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error:"), "{stderr}");
    assert!(stderr.contains("line 3"), "{stderr}");

    let missing = keller(&["analyze", "/nonexistent/path.map"]);
    assert_eq!(exit_code(&missing), 1);

    let badflag = keller(&["analyze", "--no-such-flag"]);
    assert_eq!(exit_code(&badflag), 1);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let file = fixture("counterexample_f3.map");
    let a = keller(&["analyze", file.to_str().unwrap(), "--json"]);
    let b = keller(&["analyze", file.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&a), 2);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());

    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["analysis"]["geometric_degree"], 3);
    assert_eq!(report["conjecture"][0]["variant"], "NJC");
    assert_eq!(report["conjecture"][0]["counterexample"], true);
    assert_eq!(report["conjecture"][1]["variant"], "CJC");
    assert_eq!(report["conjecture"][1]["counterexample"], false);
}

#[test]
fn sweep_summarizes_counterexample_classes() {
    let out = keller(&["sweep", "1", "2", "2", "--json"]);
    assert_eq!(exit_code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let summaries = report["summaries"].as_array().unwrap();
    assert_eq!(summaries.len(), 2);
    assert_eq!(summaries[0]["variant"], "NJC");
    assert_eq!(summaries[0]["counterexamples"], 2);
    let classes = summaries[0]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["representative"], "(X1^2 + X1)");
    assert_eq!(classes[0]["geometric_degree"], 2);
    assert_eq!(summaries[1]["variant"], "CJC");
    assert_eq!(summaries[1]["counterexamples"], 0);

    let clean = keller(&["sweep", "1", "3", "2"]);
    assert_eq!(exit_code(&clean), 0);
    let stdout = String::from_utf8_lossy(&clean.stdout);
    assert!(stdout.contains("0 counterexamples"), "{stdout}");
}

#[test]
fn sweep_budget_refusals_name_the_required_size() {
    let out = keller(&["sweep", "1", "5", "2", "--budget", "10"]);
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("125"), "{stderr}");

    let huge = keller(&["sweep", "2", "101", "3"]);
    assert_eq!(exit_code(&huge), 1);
    let stderr = String::from_utf8_lossy(&huge.stderr);
    assert!(stderr.contains("more than 2^128"), "{stderr}");

    let composite = keller(&["sweep", "1", "6", "2"]);
    assert_eq!(exit_code(&composite), 1);
}

#[test]
fn invert_prints_the_inverse_or_declines() {
    let tame = fixture("tame_f101.map");
    let out = keller(&["invert", tame.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("G1 = 100*X2^2 + X1"), "{stdout}");
    assert!(stdout.contains("G2 = X2"), "{stdout}");

    let cex = fixture("counterexample_f3.map");
    let out = keller(&["invert", cex.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("not invertible"));
}

#[test]
fn factor_prints_multiplicative_decompositions() {
    let file = fixture("factor_f7.map");
    let out = keller(&["factor", file.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        stdout.trim(),
        "F1 = (X + 1) * (X + 2) * (X + 3) * (X + 4) * (X + 5) * (X + 6)"
    );
}

#[test]
fn registry_reproduces_every_recorded_case() {
    let out = keller(&["registry", "--json"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_match"], true);
    assert!(report["cases"].as_array().unwrap().len() >= 6);
}

#[test]
fn analyze_reads_prime_lines_from_the_file() {
    let file = fixture("tame_f101.map");
    let out = keller(&["analyze", file.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let samples = report["prime_preservation"]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 2);
    // Canonical residues: X1 - X2 renders as X1 + 100*X2 over F_101.
    assert_eq!(samples[0]["sample"], "X1 + 100*X2");
    assert_eq!(samples[0]["verdict"], "prime");
    assert_eq!(samples[1]["verdict"], "prime");
}
