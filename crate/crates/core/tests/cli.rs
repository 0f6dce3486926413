//! Black-box tests of the binary: exit codes, output determinism, and
//! the file-based workflows.

use std::io::Write;
use std::process::Command;

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ffext"))
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn strip_timing(stdout: &[u8]) -> String {
    String::from_utf8_lossy(stdout)
        .lines()
        .filter(|l| !l.contains("wall_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn energy_subcommand_reports_totals() {
    let set = write_temp("0,0,0\n1,0,0\n0,1,0\n");
    let out = exe()
        .args(["energy", "--p", "5", "--d", "4", "--set"])
        .arg(set.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["command"], "energy");
    assert_eq!(doc["payload"]["size"], 3);
    assert!(doc["payload"]["report"]["total"].as_u64().unwrap() >= 15);
    assert!(doc["input_digests"].as_object().unwrap().len() == 1);
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = exe().args(["energy", "--nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_file_is_input_error() {
    let out = exe()
        .args(["energy", "--p", "5", "--set", "/definitely/not/here.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_set_file_is_input_error() {
    let set = write_temp("1,oops\n");
    let out = exe()
        .args(["rectangles", "--p", "5", "--set"])
        .arg(set.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn size_cap_is_enforced() {
    let out = exe()
        .args([
            "verify",
            "--bound",
            "transfer",
            "--p",
            "11",
            "--d",
            "4",
            "--size-cap",
            "100",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size cap"));
}

#[test]
fn verify_rerun_is_byte_identical() {
    let args = [
        "verify",
        "--bound",
        "stein-tomas",
        "--p",
        "5",
        "--d",
        "4",
        "--seed",
        "31337",
        "--n",
        "12",
    ];
    let a = exe().args(args).output().unwrap();
    let b = exe().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(strip_timing(&a.stdout), strip_timing(&b.stdout));
}

#[test]
fn verify_csv_format_has_header_and_rows() {
    let out = exe()
        .args([
            "verify",
            "--bound",
            "par-energy-d4",
            "--p",
            "5",
            "--seed",
            "1",
            "--n",
            "4",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "name,generator,p,d,size,seed,lhs,rhs_total,fitted_c"
    );
    assert!(lines.count() >= 8);
}

#[test]
fn out_file_receives_the_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sharpness.json");
    let out = exe()
        .args(["sharpness", "--d", "4", "--q", "3", "--primes", "3,7", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = doc["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!((row["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn transform_roundtrip_support() {
    // the transform of a one-point indicator has full support
    let set = write_temp("1,2\n");
    let out = exe()
        .args(["transform", "--p", "3", "--set"])
        .arg(set.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["support"], 9);
}

#[test]
fn lower_bound_subcommand_reports_ratio() {
    let out = exe().args(["lower-bound", "--p", "31"]).output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["n"], 3);
    assert!(doc["payload"]["ratio_to_p76"].as_f64().unwrap() > 0.0);
}

#[test]
fn extremize_zero_budget_returns_seeded_candidate() {
    let out = exe()
        .args([
            "extremize", "--p", "5", "--d", "4", "--q", "3", "--budget", "0", "--seed", "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["evaluations"], 1);
    assert!((doc["payload"]["best_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn incidence_full_space_example() {
    let mut body = String::new();
    for n in 0..27 {
        body.push_str(&format!("{},{},{}\n", n % 3, (n / 3) % 3, n / 9));
    }
    let set = write_temp(&body);
    let out = exe()
        .args(["incidence", "--p", "3", "--set"])
        .arg(set.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["planes"], 39);
    assert_eq!(doc["payload"]["incidences"], 351);
    assert_eq!(doc["payload"]["deviation"], 0.0);
}
