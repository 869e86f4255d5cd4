//! End-to-end checks of the command-line surface and its exit-code contract:
//! 0 resolved/ok, 1 verified not resolved, 2 usage/parameter errors,
//! 3 solver timeout.

use std::path::PathBuf;
use std::process::{Command, Output};

use metricdim::verify::VerificationReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metricdim"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("metricdim-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn construct_then_verify_resolves() {
    let file = tmpfile("jp93.txt");
    let out = run(&[
        "construct",
        "--method",
        "johnson-partition",
        "--n",
        "9",
        "--k",
        "3",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("predicted_size=7"));

    let out = run(&["verify", "--input", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("resolved=true"));
    std::fs::remove_file(file).ok();
}

#[test]
fn construct_rejects_bad_parameters() {
    let out = run(&["construct", "--method", "toroidal:9,10", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "construct",
        "--method",
        "johnson-partition",
        "--n",
        "5",
        "--k",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "construct",
        "--method",
        "no-such-method",
        "--n",
        "9",
        "--k",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn projective_plane_fails_on_kneser_with_witness() {
    let file = tmpfile("pg3.txt");
    let out = run(&["design", "--kind", "pg:3", "--out", file.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");

    let out = run(&[
        "verify",
        "--input",
        file.to_str().unwrap(),
        "--family",
        "kneser",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("resolved=false"));
    assert!(text.contains("witness_u="));
    std::fs::remove_file(file).ok();
}

#[test]
fn verify_rejects_malformed_files() {
    let file = tmpfile("bad.txt");
    std::fs::write(&file, "# johnson 7 3\n1 2 3\n0 9 9\n").unwrap();
    let out = run(&["verify", "--input", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(file).ok();
}

#[test]
fn verify_json_roundtrips_through_report_parser() {
    let file = tmpfile("fano.txt");
    let out = run(&["design", "--kind", "pg:2", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&[
        "verify",
        "--input",
        file.to_str().unwrap(),
        "--family",
        "kneser",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = VerificationReport::from_json(&stdout(&out)).expect("valid JSON report");
    assert!(report.resolved);
    assert_eq!((report.n, report.k), (7, 3));

    // The key=value form parses back to the same report.
    let out = run(&[
        "verify",
        "--input",
        file.to_str().unwrap(),
        "--family",
        "kneser",
    ]);
    let kv = VerificationReport::parse_kv(&stdout(&out)).expect("valid kv report");
    assert_eq!(kv, report);
    std::fs::remove_file(file).ok();
}

#[test]
fn exact_solves_and_reports() {
    let out = run(&["exact", "--family", "johnson", "--n", "6", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dimension=4"));
    assert!(text.contains("proof=exhaustive"));

    // A deliberately tiny budget forces the timeout path and exit code 3.
    let out = bin()
        .args(["exact", "--family", "kneser", "--n", "13", "--k", "4"])
        .args(["--timeout-secs", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("proof=timeout-partial"));
}

#[test]
fn bounds_table_renders_and_serializes() {
    let out = run(&["bounds", "--family", "kneser", "--n", "13", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("steiner-triple-system"));
    assert!(text.contains("26"));

    let out = run(&[
        "bounds", "--family", "kneser", "--n", "100", "--k", "4", "--json",
    ]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let toroidal = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "toroidal-paths")
        .expect("toroidal row");
    assert_eq!(toroidal["value"], 200);
}

#[test]
fn design_kinds_and_load() {
    let out = run(&["design", "--kind", "sts:13"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("# points=13 blocks=26"));

    let out = run(&["design", "--kind", "hadamard:3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("# points=11 blocks=11"));

    let out = run(&["design", "--kind", "sts:11"]);
    assert_eq!(out.status.code(), Some(2));

    // Write then reload a structure.
    let file = tmpfile("ag3.txt");
    let out = run(&["design", "--kind", "ag:3", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["design", "--load", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("# points=9 blocks=12"));
    std::fs::remove_file(file).ok();
}
