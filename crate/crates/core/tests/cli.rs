use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehnkit")).args(args).output().expect("run dehnkit")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(&[&["--json"], args].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn wp_dehn_trace() {
    let v = json(&["wp", &path("c3.txt"), "a^6"]);
    assert_eq!(v["verdict"], "trivial");
    assert_eq!(v["method"], "dehn");
    assert_eq!(v["trace"].as_array().unwrap().len(), 2);
    assert_eq!(v["certificate"]["kind"], "trivial");
}

#[test]
fn wp_nontrivial_certificate() {
    let v = json(&["wp", &path("s2.txt"), "a1"]);
    assert_eq!(v["verdict"], "nontrivial");
    assert_eq!(v["certificate"]["degree"], 2);
    let v = json(&["wp", &path("a5.txt"), "a"]);
    assert_eq!(v["certificate"]["degree"], 5);
    assert_eq!(v["method"], "oracle");
}

#[test]
fn descend_json() {
    let v = json(&["descend", &path("g0.txt"), "--stable", "b", "--stable", "d"]);
    assert_eq!(v["steps"][0]["after"], "<a0, a1 | a0 a1 a0^-1 a1^-1>");
    assert_eq!(v["steps"][1]["after"], "<c0, c1 | c0 c1^-1>");
    assert_eq!(v["shape"], "Z");
}

#[test]
fn simplify_and_homcount() {
    let v = json(&["tietze-simplify", &path("tietze_chain.txt")]);
    assert_eq!(v["result"], "<b |>");
    let v = json(&["homcount", &path("tietze_chain.txt"), "--degree", "3"]);
    assert_eq!(v["count"], 6);
}

#[test]
fn classify_text() {
    let out = run(&["classify", &path("torsion.txt")]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("n=2"));
}

#[test]
fn exit_codes() {
    let bad_word = run(&["wp", &path("c3.txt"), "a q"]);
    assert_eq!(bad_word.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_word.stderr).starts_with("error:"));

    let missing = run(&["wp", &path("no_such_file.txt"), "a"]);
    assert_eq!(missing.status.code(), Some(1));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    // abelianization cannot separate a commutator and the budget allows nothing else
    let unknown = run(&[
        "oracle",
        &path("g0.txt"),
        "a b a^-1 b^-1 a b a^-1 b^-1 a b a^-1 b^-1",
        "--max-degree",
        "1",
        "--max-moves",
        "0",
        "--time-limit",
        "1",
    ]);
    assert_eq!(unknown.status.code(), Some(2), "{}", String::from_utf8_lossy(&unknown.stdout));
}
