use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_slackhopf"));
    cmd.env_remove("SLACKHOPF_MAX_EXHAUSTIVE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.args(args).output().expect("binary runs")
}

/// Runs with `--json` on example files (bare names are looked up in examples/).
fn report(args: &[&str]) -> Value {
    let resolved: Vec<String> = args
        .iter()
        .map(|a| {
            if a.contains('.') && !a.starts_with('-') {
                example(a).display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    let mut full = vec!["--json"];
    full.extend(resolved.iter().map(String::as_str));
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn verdict(r: &Value) -> &str {
    r["verdict"].as_str().unwrap()
}

fn notes(r: &Value) -> Vec<String> {
    r["notes"].as_array().unwrap().iter().map(|n| n.as_str().unwrap().to_string()).collect()
}

fn all_checks_pass(r: &Value) -> bool {
    r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == Value::Bool(true))
}

fn certificate<'a>(r: &'a Value, name: &str) -> &'a str {
    r["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no certificate {name}"))["text"]
        .as_str()
        .unwrap()
}

#[test]
fn validate_kz2_is_a_comagma_bialgebra() {
    let r = report(&["validate", "kz2.alg"]);
    assert_eq!(r["schema"], "slackhopf-report/1");
    assert_eq!(verdict(&r), "valid comagma bialgebra");
    assert!(all_checks_pass(&r));
}

#[test]
fn validate_m2_flip_has_no_counit() {
    let r = report(&["validate", "m2_flip.alg"]);
    assert_eq!(verdict(&r), "valid comagma algebra, no counit");
}

#[test]
fn validate_quasi_and_finite_files() {
    assert_eq!(verdict(&report(&["validate", "kz2_quasi.alg"])), "valid quasi-bialgebra");
    assert_eq!(verdict(&report(&["validate", "interval.cat"])), "valid category");
    assert_eq!(verdict(&report(&["validate", "z3.mon"])), "valid monoid");
}

#[test]
fn out_of_range_index_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    std::fs::write(&path, "field QQ\ndim 2\nbasis 1 g\nunit 0 1\nmult 0 5 0 1\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5") && err.contains("`mult`"), "{err}");
}

#[test]
fn non_associative_table_is_a_verdict_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.mon");
    std::fs::write(&path, "elements 1 a b\nunit 1\nop 1 1 1\nop 1 a a\nop 1 b b\nop a 1 a\nop a a b\nop a b b\nop b 1 b\nop b a a\nop b b a\n").unwrap();
    let out = run(&["--json", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict(&r), "invalid monoid");
    assert!(!all_checks_pass(&r));
    // commands that need a valid monoid refuse it
    assert_eq!(run(&["fincat", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn kz2_one_one_certifies_with_trivial_a_and_b() {
    let r = report(&["slack", "kz2.alg", "--check", "kz2_one.v"]);
    assert_eq!(verdict(&r), "Certificate");
    let n = notes(&r);
    assert!(n.contains(&"𝔞 = 1".to_string()) && n.contains(&"𝔟 = 1".to_string()), "{n:?}");
    assert!(all_checks_pass(&r));
}

#[test]
fn idempotent_monoid_over_gf2_has_no_slack_structure() {
    let r = report(&["slack", "gf2_idempotent_monoid.alg", "--find", "exhaustive"]);
    assert_eq!(verdict(&r), "NoneExists");
    assert!(notes(&r)[0].contains("16"));
}

#[test]
fn m2_flip_randomized_finds_a_structure() {
    let r = report(&["slack", "m2_flip.alg", "--find", "randomized", "--seed", "1"]);
    assert_eq!(verdict(&r), "Found");
    assert!(notes(&r).contains(&"H^l invertible: false".to_string()));
    // same seed, same structure
    let again = report(&["slack", "m2_flip.alg", "--find", "randomized", "--seed", "1"]);
    assert_eq!(certificate(&r, "v"), certificate(&again, "v"));
}

#[test]
fn randomized_probe_without_luck_is_unknown() {
    let r = report(&["slack", "gf2_idempotent_monoid.alg", "--find", "randomized", "--trials", "50"]);
    assert_eq!(verdict(&r), "Unknown");
}

#[test]
fn exceeding_the_bound_exits_with_two() {
    let alg = example("gf2_idempotent_monoid.alg");
    let out = run_env(
        &["slack", alg.to_str().unwrap(), "--find", "exhaustive"],
        &[("SLACKHOPF_MAX_EXHAUSTIVE", "15")],
    );
    assert_eq!(out.status.code(), Some(2));
    // over Q the enumeration never starts
    let q = example("kz2.alg");
    assert_eq!(run(&["slack", q.to_str().unwrap(), "--find", "exhaustive"]).status.code(), Some(2));
}

#[test]
fn quasi_antipode_passes_qa1_to_qa4() {
    let r = report(&["quasi", "kz2_quasi.alg", "antipode", "kz2_quasi.qa"]);
    assert_eq!(verdict(&r), "quasi-antipode");
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for qa in ["QA1", "QA2", "QA3", "QA4"] {
        assert!(names.contains(&qa), "{names:?}");
    }
    assert!(all_checks_pass(&r));
    // the shipped v file is the structure this antipode generates
    let shipped = std::fs::read_to_string(example("kz2_quasi_v.v")).unwrap();
    let body: String = shipped.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(certificate(&r, "v"), body);
}

#[test]
fn v_from_quasi_antipode_is_left_hopf() {
    let r = report(&["quasi", "kz2_quasi.alg", "classify", "kz2_quasi_v.v"]);
    assert_eq!(verdict(&r), "LeftHopf");
    assert!(notes(&r).contains(&"sl(v) = 1⊗1".to_string()));
}

#[test]
fn g_g_is_slack_only_and_decomposes() {
    let r = report(&["quasi", "kz2.alg", "classify", "kz2_gg.v"]);
    assert_eq!(verdict(&r), "SlackOnly");
    let n = notes(&r);
    assert!(n.contains(&"sl(v) = g⊗1".to_string()), "{n:?}");
    assert!(n.contains(&"sl(v) invertible in Aᵉ: true".to_string()));
    assert!(n.contains(&"v = v₀ ◁ γ with v₀ = 1⊗1, γ = g⊗1".to_string()));
    let d = report(&["quasi", "kz2.alg", "decompose", "kz2_gg.v"]);
    assert_eq!(verdict(&d), "Decomposed");
    assert_eq!(certificate(&d, "gamma"), certificate(&r, "gamma"));
}

#[test]
fn one_g_is_left_hopf() {
    let r = report(&["quasi", "kz2.alg", "classify", "kz2_one_g.v"]);
    assert_eq!(verdict(&r), "LeftHopf");
    assert!(notes(&r).contains(&"𝔞 = g".to_string()));
}

#[test]
fn fincat_examples() {
    let r = report(&["fincat", "interval.cat"]);
    assert_eq!(verdict(&r), "NoWitness");
    assert!(notes(&r).contains(&"groupoid: false".to_string()));
    let r = report(&["fincat", "z2_swap.cat"]);
    assert_eq!(verdict(&r), "Witness");
    let r = report(&["fincat", "z3.mon"]);
    assert_eq!(verdict(&r), "Witness");
    assert!(notes(&r).contains(&"witness (a, b) = (1, 1)".to_string()));
    let r = report(&["fincat", "bool.mon", "--kind", "monoid"]);
    assert_eq!(verdict(&r), "NoWitness");
    assert!(notes(&r).contains(&"no witness among all 4 pairs (a, b)".to_string()));
    assert!(all_checks_pass(&r));
}

#[test]
fn usage_errors_exit_nonzero() {
    let alg = example("kz2.alg");
    let out = run(&["slack", alg.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    let out = run(&["validate", "/nonexistent/file.alg"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_output_has_verdict_line() {
    let out = run(&["slack", example("kz2.alg").to_str().unwrap(), "--check", example("kz2_one.v").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: Certificate"));
    assert!(text.contains("[pass] H^v w = 1⊗1"));
}
