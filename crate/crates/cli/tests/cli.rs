use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn exactcat(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactcat")).args(args).env("EXACTCAT_CACHE_DIR", cache).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn malformed_spec_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[field]\np = \n").unwrap();
    let o = exactcat(&["catalog", "--spec", bad.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let missing = dir.path().join("missing.toml");
    let o = exactcat(&["catalog", "--spec", missing.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));

    let o = exactcat(&["catalog"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_theorem_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = spec("a2.toml");
    let o = exactcat(&["verify", "9.9", "--spec", a2.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = spec("a3.toml");
    let o = exactcat(&["enumerate", "--spec", a3.to_str().unwrap(), "--budget", "10", "--no-cache"], dir.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn semisimple_algebra_has_only_the_split_structure() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec("semisimple.toml");
    let o = exactcat(&["enumerate", "--spec", s.to_str().unwrap(), "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ext_table"]["nonzero"].as_array().unwrap().len(), 0);
    assert_eq!(v["enumeration"]["structures"].as_array().unwrap().len(), 1);
}

#[test]
fn every_theorem_verifies_on_the_radical_square_zero_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec("a3_radical_square_zero.toml");
    for t in ["2.3", "2.9", "3.3", "3.4", "3.5", "3.6", "4.3", "2.8-4"] {
        let o = exactcat(&["verify", t, "--spec", s.to_str().unwrap(), "--format", "json"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{t}");
        assert_eq!(json(&o)["violations"], 0, "{t}");
    }
}

#[test]
fn cached_and_uncached_reports_match() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = spec("a3.toml");
    let args = ["verify", "2.9", "--spec", a3.to_str().unwrap(), "--format", "json"];
    let cold = exactcat(&args, dir.path());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some(), "cache was not written");
    let warm = exactcat(&args, dir.path());
    let mut uncached_args = args.to_vec();
    uncached_args.extend(["--no-cache", "--workers", "1"]);
    let uncached = exactcat(&uncached_args, dir.path());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn out_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = spec("a2.toml");
    let out = dir.path().join("report.json");
    let o = exactcat(
        &["catalog", "--spec", a2.to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["catalog"]["modules"].as_array().unwrap().len(), 3);
}
