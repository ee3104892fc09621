//! The `coalition` binary, run against the shipped fixture files.

use std::path::PathBuf;
use std::process::{Command, Output};

use coalition::fixtures;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coalition")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn eval_prints_and_exits_with_the_answer() {
    let o = run(&["eval", &path("m1"), "s0", "[AG]p"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
    let o = run(&["eval", &path("m1"), "s0", "[{a}]p"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "false"));
    let o = run(&["eval", &path("m1"), "s0", "[{a}]("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
    assert_eq!(run(&["eval", "/nonexistent.json", "s0", "p"]).status.code(), Some(2));
}

#[test]
fn classify_reports_clear_and_tree() {
    let o = run(&["classify", &path("lock")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["clear"], true);
    assert_eq!(v["tree_like"], false);
    assert_eq!(v["signature"], "SD");
    let v: Value = serde_json::from_slice(&run(&["classify", &path("tree_gam")]).stdout).unwrap();
    assert_eq!((v["tree_like"].clone(), v["root"].clone()), (Value::Bool(true), Value::from("s0")));
    let v: Value = serde_json::from_slice(&run(&["classify", &path("n1")]).stdout).unwrap();
    assert_eq!((v["kind"].clone(), v["clear"].clone()), (Value::from("snm"), Value::Bool(false)));
}

#[test]
fn transform_to_snm_represents_every_single_first_fixture() {
    let dir = std::env::temp_dir().join(format!("coalition-cli-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["lock_sam", "proc_sam", "lock", "proc", "u1", "loop_gam", "tree_gam"] {
        let o = run(&["transform", &path(name), "--to", "snm"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let out = dir.join(format!("{name}.snm.json"));
        std::fs::write(&out, &o.stdout).unwrap();
        let o = run(&["represent", out.to_str().unwrap(), &path(name)]);
        assert_eq!(stdout(&o).trim(), "z-represents", "{name}");
    }
    // m1 is not single-coalition-first.
    assert_eq!(run(&["transform", &path("m1"), "--to", "snm"]).status.code(), Some(2));
    // Its alpha model alpha-represents it but does not z-represent it.
    let o = run(&["transform", &path("m1"), "--to", "alpha"]);
    let alpha = dir.join("m1.alpha.json");
    std::fs::write(&alpha, &o.stdout).unwrap();
    let o = run(&["represent", alpha.to_str().unwrap(), &path("m1"), "--alpha"]);
    assert_eq!(stdout(&o).trim(), "alpha-represents");
    let o = run(&["represent", alpha.to_str().unwrap(), &path("m1")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no: at coalition"));
}

#[test]
fn derive_and_unravel() {
    let o = run(&["derive", &path("lock"), "--coalition", "{a,b}", "--what", "availability"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["table"]["s1"].as_array().unwrap().len(), 3);
    let o = run(&["derive", &path("n1"), "--coalition", "AG", "--what", "neighborhood"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["table"]["s0"], serde_json::json!([["s1"], ["s2"], ["s3"]]));

    let o = run(&["unravel", &path("m1"), "--from", "s0", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = coalition::io::Document::from_json(&stdout(&o)).unwrap();
    assert!(doc.model.carrier().names().iter().any(|n| n == "s0/(a:a1,b:b1)/s1/(a:a1,b:b1)/s1"));
    assert_eq!(run(&["unravel", &path("m1"), "--from", "s7", "--depth", "1"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "gam-facts", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "m1-converse-fails"));

    let o = run(&["verify", "axiom-validity", "--count", "50", "--filter", "SID"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify", "gam-facts", "--exhaustive", "--states", "4"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn shipped_fixtures_cover_every_name() {
    for (name, _) in fixtures::NAMES {
        assert!(fixture(name).exists(), "{name}");
    }
}
