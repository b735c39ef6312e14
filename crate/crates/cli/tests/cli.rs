use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn arrfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn stanley_charpoly_low_to_high() {
    let o = arrfree(&[
        "charpoly",
        data("stanley.arr").to_str().unwrap(),
        "--prime",
        "13",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["chi"], serde_json::json!([-9, 15, -7, 1]));
    assert_eq!(v["count"]["agrees"], Value::Bool(true));
}

#[test]
fn stanley_not_free_with_codim_four() {
    let o = arrfree(&["free", data("stanley.arr").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["verdict"], "not-free");
    assert_eq!(v["codim"], 4);
    let o = arrfree(&["codim", data("stanley.arr").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["codim"], 4);
}

#[test]
fn a2_shi_passes() {
    let o = arrfree(&["verify-er", "--type", "A2", "--family", "shi", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["exponents"], serde_json::json!([1, 3, 3]));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["lattice", data("stanley.arr").to_str().unwrap()],
        vec!["free", data("a2_cone.arr").to_str().unwrap()],
        vec!["exp2", data("a2_mult2.arr").to_str().unwrap()],
    ] {
        let a = arrfree(&args);
        let b = arrfree(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn keys_are_sorted() {
    let o = arrfree(&["charpoly", data("boolean3.arr").to_str().unwrap()]);
    let text = String::from_utf8(o.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
}

#[test]
fn family_round_trip_matches_verify() {
    let dir = tempfile::tempdir().unwrap();
    for fam in ["shi", "catalan"] {
        let args = ["--type", "B2", "--family", fam, "--m", "1"];
        let o = arrfree(&[&["family"][..], &args, &["--format", "arr"]].concat());
        assert_eq!(o.status.code(), Some(0));
        let path = dir.path().join(format!("b2_{fam}.arr"));
        std::fs::write(&path, &o.stdout).unwrap();
        let free = arrfree(&["free", path.to_str().unwrap(), "--hyperplane", "0"]);
        let verify = arrfree(&[&["verify-er"][..], &args].concat());
        assert_eq!(free.status.code(), verify.status.code());
        assert_eq!(json(&free)["exponents"], json(&verify)["exponents"]);
    }
}

#[test]
fn errors_exit_one_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.arr");
    std::fs::write(&path, "dim 2\n1 0\n1 q\n").unwrap();
    let o = arrfree(&["charpoly", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    std::fs::write(&path, "dim 2\n1 0\n2 0\n").unwrap();
    assert_eq!(
        arrfree(&["charpoly", path.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(arrfree(&["bogus"]).status.code(), Some(1));
    assert_eq!(arrfree(&["roots", "--type", "E6"]).status.code(), Some(1));
    let o = arrfree(&[
        "verify-er",
        "--type",
        "A2",
        "--family",
        "interp",
        "--ideal",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hilbert_identity_and_solomon_terao() {
    let o = arrfree(&["hilb-check", data("stanley.arr").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["agrees"], Value::Bool(true));
    let o = arrfree(&["st-check", data("boolean3.arr").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["solomon_terao"], serde_json::json!([-1, 3, -3, 1]));
}
