use std::path::PathBuf;
use std::process::{Command, Output};

fn akh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_akh")).args(args).env_remove("AKH_FIXTURE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("akh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn khr_of_hopf() {
    let o = akh(&["khr", "--fixture", "hopf+"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1*t^0*q^1 + 1*t^2*q^5");
}

#[test]
fn akh_of_two_circle_unlink() {
    let o = akh(&["akh", "--fixture", "U2"]);
    assert_eq!(stdout(&o).trim(), "1*t^0*q^-2*f^-2 + 2*t^0*q^0*f^0 + 1*t^0*q^2*f^2");
}

#[test]
fn flavor_overrides_the_command() {
    let a = akh(&["kh", "--fixture", "U2", "--flavor", "annular"]);
    let b = akh(&["akh", "--fixture", "U2"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn ss_of_fig1_collapses() {
    let o = akh(&["ss", "--fixture", "fig1"]);
    let out = stdout(&o);
    assert!(out.contains("collapsed_at_E2: true"), "{out}");
    assert!(out.contains("E_infinity: total 8"), "{out}");
    let o = akh(&["ss", "--fixture", "fig1", "--format", "json", "--pages", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["collapsed_at_E2"], true);
    assert_eq!(v["E_infinity"]["total"], 8);
    assert_eq!(v["pages"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_all_fixtures() {
    let o = akh(&["verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["ss", "--fixture", "braid-3-mixed", "--format", "json"][..], &["census", "--random", "5", "--seed", "9"]] {
        assert_eq!(stdout(&akh(args)), stdout(&akh(args)));
    }
}

#[test]
fn augment_round_trips_through_json() {
    let o = akh(&["augment", "--fixture", "annular-hopf-2"]);
    let path = scratch("aug.json", &stdout(&o));
    let o = akh(&["khr", "--input", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("*t^"));
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.json", r#"{"crossings": [[1,2,3,3]]}"#);
    assert_eq!(akh(&["kh", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(akh(&["kh", "--fixture", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(akh(&["kh", "--fixture", "trefoil", "--cap", "2"]).status.code(), Some(3));
    assert_eq!(akh(&["kh"]).status.code(), Some(2));
}

#[test]
fn fixture_directory_override() {
    let path = scratch("mine.json", r#"{"crossings": [], "free_loops": [1]}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_akh"))
        .args(["akh", "--fixture", "mine"])
        .env("AKH_FIXTURE_DIR", path.parent().unwrap())
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "1*t^0*q^-1*f^-1 + 1*t^0*q^1*f^1");
}

#[test]
fn census_reads_forests() {
    let path = scratch("forest.json", r#"{"n": 2, "edges": [[0, 1]], "annular": [0]}"#);
    let o = akh(&["census", "--input", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["diagram"]["crossings"].as_array().unwrap().len(), 2);
    let cyclic = scratch("cycle.json", r#"{"n": 2, "edges": [[0, 1], [1, 0]], "annular": []}"#);
    assert_eq!(akh(&["census", "--input", cyclic.to_str().unwrap()]).status.code(), Some(2));
}
