use std::path::Path;
use std::process::Command;

use fracgs::io::{read_json, OUT_ENV};
use fracgs::report::Report;

fn fracgs(out: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fracgs")).args(args).env(OUT_ENV, out).output().expect("binary runs")
}

#[test]
fn solve_writes_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracgs(dir.path(), &["solve", "--s", "1", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let job = dir.path().join("solve-s1-a2-l1");
    for f in ["report.json", "solution.csv", "solution.json"] {
        assert!(job.join(f).is_file(), "{f}");
    }
    let report: Report = read_json(&job.join("report.json")).unwrap();
    assert!(report.passed());
    assert_eq!(report.schema_version, fracgs::report::SCHEMA_VERSION);
    let dev = report.checks.iter().find(|c| c.name == "closed-form").unwrap();
    assert!(dev.value <= 1e-8);
    let q = fracgs::Field::read_csv(&job.join("solution.csv")).unwrap();
    assert_eq!(q.grid().points(), report.results["grid"]["N"].as_u64().unwrap() as usize);
}

#[test]
fn supercritical_exponent_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracgs(dir.path(), &["solve", "--s", "0.25", "--alpha", "3"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("supercritical"));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_ne!(fracgs(dir.path(), &["solve", "--bogus"]).status.code(), Some(0));
    assert_ne!(fracgs(dir.path(), &["solve", "--L", "10"]).status.code(), Some(0));
    assert_ne!(fracgs(dir.path(), &["nonsense"]).status.code(), Some(0));
}

#[test]
fn missing_solution_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    let out = fracgs(dir.path(), &["spectrum", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("io"));
}

#[test]
fn stored_solution_feeds_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracgs(dir.path(), &["solve", "--s", "1", "--alpha", "2", "--L", "40", "--N", "512"]);
    assert_eq!(out.status.code(), Some(0));
    let stored = dir.path().join("solve-s1-a2-l1/solution.csv");
    let out = fracgs(dir.path(), &["spectrum", "--s", "1", "--alpha", "2", "--input", stored.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let job = dir.path().join("spectrum-s1-a2-l1");
    assert!(job.join("spectrum-even.json").is_file() && job.join("eigenfield-even-1.csv").is_file());
}

#[test]
fn reruns_are_identical() {
    let runs: Vec<Report> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let out = fracgs(dir.path(), &["extend", "--s", "0.4", "--seed", "5"]);
            assert_eq!(out.status.code(), Some(0));
            read_json(&dir.path().join("extend-s0.4-a1-l1/report.json")).unwrap()
        })
        .collect();
    assert_eq!(runs[0].results, runs[1].results);
    assert_eq!(runs[0].checks, runs[1].checks);
    assert_eq!(runs[0].config["seed"], 5);
}
