use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brieskorn-lab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn result<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .and_then(|rs| rs.iter().find(|r| r["name"] == name))
        .unwrap_or_else(|| panic!("no result {name}"))
}

#[test]
fn verify_contact_default_passes() {
    let out = run(&["verify-contact", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["check"], "verify-contact");
    assert_eq!(r["pass"], true);
    assert_eq!(r["seed"], 42);
}

#[test]
fn monodromy_of_3_2() {
    let out = run(&["monodromy", "--exponents", "3,2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(result(&r, "mu")["value"], 2);
    assert_eq!(result(&r, "psi")["value"], serde_json::json!([["1", "1"], ["-1", "0"]]));
    assert_eq!(result(&r, "det")["value"], "1");
}

#[test]
fn join_homology_of_2_2_2() {
    let out = run(&["join-homology", "--exponents", "2,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result(&json(&out), "reduced_ranks")["value"], serde_json::json!([0, 0, 1]));
}

#[test]
fn rotation_map_agrees_for_two_exponents() {
    assert_eq!(run(&["rotation-map", "--exponents", "3,2"]).status.code(), Some(0));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(run(&["verify-contact", "--exponents", "2,x"]).status.code(), Some(2));
    assert_eq!(run(&["verify-contact", "--exponents", "0,2,2"]).status.code(), Some(2));
    assert_eq!(run(&["verify-contact", "--s", "2"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# small run\nseed = 7\nsamples = 40\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let r = json(&run(&["verify-contact", "--config", cfg]));
    assert_eq!(r["seed"], 7);
    assert_eq!(r["config"]["samples"], 40);

    let r = json(&run(&["verify-contact", "--config", cfg, "--seed", "9"]));
    assert_eq!(r["seed"], 9);
}

#[test]
fn csv_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.csv");
    let out = run(&["lemma44", "--samples", "20", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,seed,name,value,threshold,pass,witness"));
    assert!(lines.all(|l| l.starts_with("lemma44,42,")));
}

fn write_report(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut full = args.to_vec();
    full.extend(["--output", path.to_str().unwrap()]);
    run(&full);
    std::fs::read(&path).unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify-contact", "--samples", "60"][..],
        &["epsilon-search", "--exponents", "2,2,2", "--samples", "60"][..],
        &["alpha-minus", "--samples", "40"][..],
    ] {
        let a = write_report(dir.path(), "a.json", args);
        let b = write_report(dir.path(), "b.json", args);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn seed_changes_samples() {
    let a = run(&["verify-contact", "--samples", "30", "--seed", "1"]).stdout;
    let b = run(&["verify-contact", "--samples", "30", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}
