use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn abduce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abduce")).args(args).output().expect("binary runs")
}

fn doc(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("abduce-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn ar_verify_accepts_ketoacidosis() {
    let kb = fixture("diabetes.kb");
    let hyp = fixture("keto.abox");
    let args = [
        "verify",
        "--kb",
        kb.to_str().unwrap(),
        "--obs",
        "DiabeticComa(patient)",
        "--semantics",
        "ar",
        "--hyp",
        hyp.to_str().unwrap(),
    ];
    let o = abduce(&args);
    assert_eq!(o.status.code(), Some(0));
    let d = doc(&o);
    assert_eq!(d["valid"], Value::Bool(true));
    for key in ["witness", "counterexample", "fresh_conflicts", "experimental"] {
        assert!(d.get(key).is_some(), "missing {key}");
    }
    assert_eq!(abduce(&args).stdout, o.stdout, "output is deterministic");
}

#[test]
fn entailed_observation_is_a_promise_violation() {
    let kb = fixture("diabetes.kb");
    let o = abduce(&["exist", "--kb", kb.to_str().unwrap(), "--obs", "GlycemicCrisis(patient)", "--semantics", "ar"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(doc(&o)["error"]["kind"], "observation-entailed");
}

#[test]
fn generated_instance_round_trips_through_verify() {
    let out = scratch("unsat");
    let cnf = fixture("unsat.cnf");
    let o = abduce(&["gen", "--mode", "unsat-ar-verify", "--cnf", cnf.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    for check in manifest["checks"].as_array().unwrap() {
        let argv: Vec<String> = check["command"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
        let r = Command::new(env!("CARGO_BIN_EXE_abduce")).args(&argv).current_dir(&out).output().unwrap();
        assert_eq!(r.status.code(), Some(0));
        assert_eq!(doc(&r)["valid"], check["oracle_answer"]);
    }
    std::fs::remove_dir_all(&out).unwrap();
}

#[test]
fn gen_rejects_mismatched_source() {
    let cnf = fixture("unsat.cnf");
    let out = scratch("mismatch");
    let o = abduce(&["gen", "--mode", "reach-brave-verify", "--cnf", cnf.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn gen_mus_with_explicit_subset() {
    let cnf = fixture("unsat.cnf");
    let out = scratch("mus");
    let o = abduce(&[
        "gen",
        "--mode",
        "mus-subset-min",
        "--cnf",
        cnf.to_str().unwrap(),
        "--subset",
        "1,2,3,4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(doc(&o)["instance"]["checks"][0]["oracle_answer"], Value::Bool(true));
    std::fs::remove_dir_all(&out).unwrap();
}

#[test]
fn builtin_examples_agree() {
    for name in ["diabetes", "ar-non-convex", "brave-cc", "non-triv"] {
        let o = abduce(&["example", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert_eq!(doc(&o)["agrees"], Value::Bool(true), "{name}");
    }
    assert_eq!(abduce(&["example", "no-such-example"]).status.code(), Some(2));
}

#[test]
fn stdin_hypothesis() {
    use std::io::Write;
    use std::process::Stdio;
    let kb = fixture("diabetes.kb");
    let mut child = Command::new(env!("CARGO_BIN_EXE_abduce"))
        .args(["verify", "--kb", kb.to_str().unwrap(), "--obs", "DiabeticComa(patient)", "--semantics", "ar", "--hyp", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"OverdosedInsulin(patient)\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let d = doc(&o);
    assert_eq!(d["valid"], Value::Bool(false));
    assert!(d["counterexample"].is_object());
}

#[test]
fn selftest_passes_and_is_reproducible() {
    let a = abduce(&["selftest", "--seed", "7", "--rounds", "3", "--jobs", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(doc(&a)["passed"], Value::Bool(true));
    let b = abduce(&["selftest", "--seed", "7", "--rounds", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(abduce(&["verify", "--kb", "x"]).status.code(), Some(1));
    assert_eq!(abduce(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(abduce(&["selftest", "--jobs", "0"]).status.code(), Some(1));
}

#[test]
fn missing_file_is_invalid_input() {
    let o = abduce(&["check", "--kb", "/nonexistent/kb"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(doc(&o)["error"]["kind"], "invalid-input");
}
