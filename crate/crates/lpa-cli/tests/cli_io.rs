//! End-to-end behaviour of the `lpa` binary: exit codes, JSON determinism,
//! error reporting, corpus resilience and the degree override.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn lpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn lpa_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpa"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn usage_errors_exit_2() {
    let out = lpa(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lpa(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2_with_line_numbers() {
    let dir = tempdir("parse_errors");
    let bad = dir.join("bad.lpa");
    std::fs::write(&bad, "vertex v\nedge e v undeclared\n").unwrap();
    let out = lpa(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn analyze_reports_match_spec_shapes() {
    let comet = corpus_dir().join("a3_comet.lpa");
    let out = lpa(&["analyze", comet.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("comet: yes"), "{text}");
    assert!(text.contains("cycles: 1 (no exits)"), "{text}");
    assert!(text.contains("MT3: yes"), "{text}");

    let sinks = corpus_dir().join("two_sinks.lpa");
    let text = stdout(&lpa(&["analyze", sinks.to_str().unwrap()]));
    assert!(text.contains("MT3: no (s1,s2)"), "{text}");

    let e2 = corpus_dir().join("e2.lpa");
    let text = stdout(&lpa(&["analyze", e2.to_str().unwrap()]));
    assert!(text.contains("cycles: 2; exit at v0"), "{text}");
}

#[test]
fn eval_matches_relation_values() {
    let rose = corpus_dir().join("rose2.lpa");
    // Ghost times real edge contracts to the range vertex.
    let text = stdout(&lpa(&["eval", rose.to_str().unwrap(), "~e", "e"]));
    assert!(text.contains("product: 1*v"), "{text}");

    // Distinct vertices annihilate.
    let sinks = corpus_dir().join("two_sinks.lpa");
    let text = stdout(&lpa(&["eval", sinks.to_str().unwrap(), "s1", "s2"]));
    assert!(text.contains("product: 0"), "{text}");

    // The special pair expands through the completeness relation.
    let text = stdout(&lpa(&["eval", rose.to_str().unwrap(), "f~f", "v"]));
    assert!(text.contains("product: 1*v - 1*e~e"), "{text}");

    // Ill-typed expressions exit 2 with a position.
    let out = lpa(&["eval", rose.to_str().unwrap(), "e.q", "e"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn centroid_json_is_byte_identical_across_runs() {
    let file = corpus_dir().join("fan_comet.lpa");
    let a = lpa(&["centroid", file.to_str().unwrap(), "--certify", "--json"]);
    let b = lpa(&["centroid", file.to_str().unwrap(), "--certify", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(parsed["verdict"], "prime_laurent");
    assert_eq!(parsed["stable"], true);
    assert_eq!(parsed["seed_dims"]["dim"], 7);
    assert_eq!(parsed["seed_dims"]["dim_next"], 9);
    assert_eq!(parsed["certificate"]["status"], "verified");
}

#[test]
fn corpus_handles_malformed_files_and_continues() {
    let dir = tempdir("corpus_resilience");
    std::fs::write(dir.join("good.lpa"), "vertex v\nedge c v v\n").unwrap();
    std::fs::write(dir.join("broken.lpa"), "vertex v\nvertex v\n").unwrap();
    let out = lpa(&["corpus", dir.to_str().unwrap(), "--json"]);
    // A failed row makes the run a verification failure, but both rows are
    // reported.
    assert_eq!(out.status.code(), Some(1));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["file"], "broken.lpa");
    assert_eq!(rows[0]["status"], "error");
    assert_eq!(rows[1]["file"], "good.lpa");
    assert_eq!(rows[1]["certificate_status"], "verified");
}

#[test]
fn shipped_corpus_certifies() {
    let out = lpa(&["corpus", corpus_dir().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["all_certified"], true);
    assert!(parsed["rows"].as_array().unwrap().len() >= 20);
}

#[test]
fn empty_corpus_warns_and_exits_0() {
    let dir = tempdir("empty_corpus");
    let out = lpa(&["verify", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("warning: empty corpus"));
}

#[test]
fn verify_fails_on_an_injected_bad_graph() {
    let dir = tempdir("verify_bad");
    std::fs::write(dir.join("good.lpa"), "vertex v\nedge c v v\n").unwrap();
    std::fs::write(dir.join("broken.lpa"), "edge e u v\n").unwrap();
    let out = lpa(&["verify", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL load"), "{text}");
    assert!(text.contains("result: FAIL"), "{text}");
}

#[test]
fn shipped_corpus_verifies_clean() {
    let out = lpa(&["verify", corpus_dir().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["pass"], true);
    assert_eq!(parsed["seed"], 0xC0FFEE);
}

#[test]
fn degree_env_override_is_honored() {
    let file = corpus_dir().join("single_loop.lpa");
    let out = Command::new(env!("CARGO_BIN_EXE_lpa"))
        .env("LPA_DEGREE", "2")
        .args(["centroid", file.to_str().unwrap(), "--certify", "--json"])
        .output()
        .expect("binary runs");
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["seed_dims"]["degree"], 2);
    assert_eq!(parsed["seed_dims"]["dim"], 5);
    assert_eq!(parsed["seed_dims"]["dim_next"], 7);

    // An explicit flag beats the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_lpa"))
        .env("LPA_DEGREE", "2")
        .args([
            "centroid",
            file.to_str().unwrap(),
            "--certify",
            "--degree",
            "4",
            "--json",
        ])
        .output()
        .expect("binary runs");
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["seed_dims"]["degree"], 4);
    assert_eq!(parsed["seed_dims"]["dim"], 9);
}

#[test]
fn comet_iso_cli_round_trip() {
    let file = corpus_dir().join("a2_comet.lpa");
    let out = lpa(&[
        "comet-iso",
        file.to_str().unwrap(),
        "--element",
        "e.c~e",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["size"], 2);
    assert_eq!(parsed["matrix"], "[[0, 0], [0, x]]");

    // Non-comets are a usage error for this subcommand.
    let rose = corpus_dir().join("rose2.lpa");
    let out = lpa(&["comet-iso", rose.to_str().unwrap(), "--element", "e"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn relative_paths_resolve_against_cwd() {
    let dir = tempdir("relative");
    std::fs::write(dir.join("g.lpa"), "vertex v\nedge c v v\n").unwrap();
    let out = lpa_in(&dir, &["analyze", "g.lpa"]);
    assert_eq!(out.status.code(), Some(0));
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lpa_cli_test_{tag}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
