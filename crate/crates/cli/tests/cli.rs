use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn monotile(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monotile"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_writes_graph_and_sidecar_then_solves() {
    let dir = TempDir::new().unwrap();
    let out = monotile(dir.path(), &["gen", "--variant", "badly-k5", "--n", "5", "--out", "k5.cg"]);
    assert_eq!(out.status.code(), Some(0));
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("k5.sidecar.json")).unwrap()).unwrap();
    assert_eq!(side["schema"], 1);
    assert_eq!(side["variant"], "badly-k5");

    let out = monotile(dir.path(), &["solve", "--mode", "mixed", "--in", "k5.cg", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["schema"].as_u64(), v["optimum"].as_u64()), (Some(1), Some(0)));
    assert_eq!(v["proved_optimal"], true);
}

#[test]
fn tile_bes_large_on_k66() {
    let dir = TempDir::new().unwrap();
    let gen = monotile(dir.path(), &["--seed", "4", "gen", "--variant", "random-complete", "--n", "66", "--out", "k66.cg"]);
    assert_eq!(gen.status.code(), Some(0));
    let out = monotile(dir.path(), &["tile", "--alg", "bes-large", "--in", "k66.cg", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(v["size"].as_u64().unwrap() >= 13);
    assert_eq!(v["guarantee"], 13);
}

#[test]
fn tile_outside_precondition_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    monotile(dir.path(), &["gen", "--variant", "ex-triangle", "--n", "12", "--delta", "10", "--out", "g.cg"]);
    let out = monotile(dir.path(), &["tile", "--alg", "bes-large", "--in", "g.cg"]);
    assert_eq!(out.status.code(), Some(1));
    let out = monotile(dir.path(), &["tile", "--alg", "moon-small", "--in", "g.cg"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("2 triangles"));
}

#[test]
fn verify_fact_k6_is_clean() {
    let dir = TempDir::new().unwrap();
    let out = monotile(dir.path(), &["verify", "--lemma", "fact-k6", "--workers", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["reports"][0];
    assert_eq!(r["checked"], 32768);
    assert_eq!(r["violation_count"], 0);
    assert_eq!(r["mode"], "EXHAUSTIVE");
}

#[test]
fn violation_exits_two_and_witness_reloads() {
    let dir = TempDir::new().unwrap();
    let out = monotile(dir.path(), &["verify", "--lemma", "mono-triangle", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mono-triangle-report.json"));
    let back = monotile(dir.path(), &["verify", "--reload", "mono-triangle-report.json", "--json"]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(json(&back)["violations"], 12);

    let path = dir.path().join("mono-triangle-report.json");
    let forged = std::fs::read_to_string(&path).unwrap().replacen("[0,1,0]", "[0,1,1]", 1);
    std::fs::write(&path, forged).unwrap();
    let back = monotile(dir.path(), &["verify", "--reload", "mono-triangle-report.json"]);
    assert_eq!(back.status.code(), Some(1));
}

#[test]
fn ramsey_values() {
    let dir = TempDir::new().unwrap();
    let out = monotile(dir.path(), &["ramsey", "--ell", "3", "--r", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "6\n");
    let out = monotile(dir.path(), &["special-ramsey", "--ell", "3", "--r", "2", "--json"]);
    let v = json(&out);
    assert_eq!(v["value"], 4);
    assert_eq!(v["witness"]["n"], 3);
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(monotile(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(monotile(dir.path(), &["verify", "--lemma", "nope"]).status.code(), Some(1));
    assert_eq!(monotile(dir.path(), &["solve", "--in", "missing.cg"]).status.code(), Some(1));
    assert_eq!(monotile(dir.path(), &["probe", "--nmin", "20", "--nmax", "21"]).status.code(), Some(1));
    assert_eq!(monotile(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn experiment_csv_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["experiment", "--variant", "ex-triangle", "--n", "30", "--deltas", "24..29"];
    let a = monotile(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("source,n,delta,mixed_optimum"));
    assert_eq!(text.lines().count(), 7);
    let b = monotile(dir.path(), &[&args[..], &["--workers", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn probe_csv_columns_and_seed() {
    let dir = TempDir::new().unwrap();
    let run = |w: &str| {
        monotile(
            dir.path(),
            &["--seed", "3", "--workers", w, "probe", "--nmin", "25", "--nmax", "25", "--samples", "1"],
        )
    };
    let a = run("1");
    assert_eq!(a.status.code(), Some(0));
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("n,delta,source,optimum,c1,c2,c3,below,proved\n"));
    assert_eq!(a.stdout, run("2").stdout);
}

#[test]
fn audit_passes() {
    let dir = TempDir::new().unwrap();
    let out = monotile(dir.path(), &["audit", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert_eq!(rows[1]["optimum"], 5);
    assert!(rows.iter().all(|r| r["attains_lemma_bound"] == true));
}
