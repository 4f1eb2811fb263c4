//! Black-box CLI behavior: exit codes, payload formats, and file handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn shatter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shatter"))
        .args(args)
        .output()
        .expect("spawn shatter")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmpfile(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("shatter-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_then_count_roundtrip() {
    let path = tmpfile("fs3.txt");
    let out = shatter(&["construct", "full-space", "--d", "3", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("claimed-count 28/1"));

    let out = shatter(&["count", path.to_str().unwrap(), "--d", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shattered"], 28);
    assert_eq!(v["total"], 35);
    assert_eq!(v["density"], "24/49");
}

#[test]
fn exit_codes_distinguish_input_and_resource_errors() {
    // unknown flag: clap input error
    let out = shatter(&["count", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    // missing seed on a randomized recipe
    let out = shatter(&["construct", "iid", "--k", "4", "--n", "4", "--v", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
    // blown enumeration budget
    let out = shatter(&["oracle", "f", "--n", "4", "--k", "6", "--d", "2", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    // unknown recipe
    let out = shatter(&["construct", "mystery", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn payload_goes_to_stdout_only() {
    let out = shatter(&["bounds", "cd", "--d", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "24/49\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn oracle_values_match_the_small_table() {
    for (args, expect) in [
        (vec!["oracle", "f", "--n", "3", "--k", "4", "--d", "2"], "3\n"),
        (vec!["oracle", "f", "--n", "4", "--k", "4", "--d", "2"], "5\n"),
        (vec!["oracle", "g", "--n", "3", "--k", "6", "--d", "2"], "2\n"),
    ] {
        let out = shatter(&args);
        assert!(out.status.success());
        assert_eq!(stdout(&out), expect, "{args:?}");
    }
}

#[test]
fn ca_verify_reports_witness_for_bad_arrays() {
    let path = tmpfile("fs3-raw.txt");
    shatter(&["construct", "full-space", "--d", "3", "-o", path.to_str().unwrap()]);
    let out = shatter(&["ca", "verify", path.to_str().unwrap(), "--d", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["witness"]["columns"], serde_json::json!([0, 1, 2]));
}

#[test]
fn ca_build_writes_a_parseable_array() {
    let src = tmpfile("fs3-src.txt");
    let dst = tmpfile("fs3-ca.txt");
    shatter(&["construct", "full-space", "--d", "3", "-o", src.to_str().unwrap()]);
    let out = shatter(&[
        "ca",
        "build",
        src.to_str().unwrap(),
        "--d",
        "3",
        "-o",
        dst.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n_final"], 4);
    assert_eq!(v["verified"], true);
    let text = std::fs::read_to_string(&dst).unwrap();
    assert!(text.ends_with("# strength 3 verified\n"));
    // verify accepts the declared strength from the file
    let out = shatter(&["ca", "verify", dst.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn conjecture_curve_endpoints() {
    let out = shatter(&[
        "bounds",
        "conjecture-curve",
        "--from",
        "1.0",
        "--to",
        "1.75",
        "--resolution",
        "0.75",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,value,kind"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("1.000000,0.2887880950"), "{first}");
    assert!(first.ends_with("conjectured+lower"));
    let second = lines.next().unwrap();
    assert!(second.starts_with("1.750000,0.5053791664"), "{second}");
}

#[test]
fn gamma_staircase_d1_is_flat_one() {
    let out = shatter(&["bounds", "gamma-staircase", "--d", "1", "--b-max", "3.0"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[1], "1.000000000000");
        assert_eq!(fields[2], "exact");
    }
}

#[test]
fn strict_matrix_format_is_rejected_with_position() {
    let path = tmpfile("bad.txt");
    std::fs::write(&path, "2 2 2\n0 1\n1 2\n").unwrap();
    let out = shatter(&["count", path.to_str().unwrap(), "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}
