//! End-to-end tests of the binary: output values, exit-code contract, and
//! byte-level determinism of reports and tables.

use std::process::{Command, Output};

fn spinhl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinhl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_prints_reduced_fraction() {
    let out = spinhl(&[
        "compute", "--kind", "f", "--mu", "0,0", "--u", "2,3", "--q", "1/3", "--s", "1/5",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "200/81");
}

#[test]
fn compute_empty_strip_is_one() {
    let out = spinhl(&["compute", "--kind", "g", "--nu", "", "--v", ""]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn compute_lattice_and_symmetrization_outputs_match() {
    let base = [
        "--mu", "2,1", "--u", "2,3", "--q", "1/3", "--s", "1/5",
    ];
    let a = spinhl(&[&["compute", "--kind", "f"], &base[..]].concat());
    let b = spinhl(&[&["compute", "--kind", "f-sym"], &base[..]].concat());
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn verify_exit_codes() {
    // Passing check at an explicit point: exit 0.
    let out = spinhl(&[
        "verify", "cauchy", "--q", "1/3", "--s", "1/5", "--u", "1/4", "--v", "1/4",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // Unknown id: exit 2.
    let out = spinhl(&["verify", "no-such-id"]);
    assert_eq!(out.status.code(), Some(2));

    // Non-convergent explicit point: usage/precondition error, exit 2.
    let out = spinhl(&[
        "verify", "cauchy", "--q", "1/3", "--s", "1/5", "--u", "2", "--v", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Exhausted truncation budget: reported failure, exit 1.
    let out = spinhl(&[
        "verify", "cauchy", "--q", "1/3", "--s", "1/5", "--u", "1/4", "--v", "1/4", "--cap", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_seeded_exact_check() {
    let out = spinhl(&["verify", "yang-baxter", "--seed", "7", "--points", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid JSON envelope");
    let reports = parsed["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["id"], "yang-baxter");
    assert_eq!(reports[0]["residual"], 0.0);
    assert_eq!(reports[0]["pass"], true);
}

#[test]
fn verify_reports_are_byte_identical_across_reruns() {
    let args = [
        "verify",
        "residue-identity",
        "symmetrization-constant",
        "g-stability",
        "--seed",
        "11",
        "--points",
        "3",
    ];
    let a = spinhl(&args);
    let b = spinhl(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_rows_and_determinism() {
    let args = [
        "table", "--kind", "g", "--length", "2", "--max-part", "2", "--v", "2,3",
    ];
    let a = spinhl(&args);
    assert!(a.status.success());
    let text = stdout(&a);
    let lines: Vec<&str> = text.trim().lines().collect();
    // Header plus C(4,2) = 6 rows.
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "signature,value");
    let b = spinhl(&args);
    assert_eq!(a.stdout, b.stdout);

    // Re-parsed values equal recomputation through the compute subcommand.
    for line in &lines[1..3] {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(line.as_bytes());
        let record = rdr.records().next().unwrap().unwrap();
        let sig = record.get(0).unwrap();
        let value = record.get(1).unwrap();
        let out = spinhl(&["compute", "--kind", "g", "--nu", sig, "--v", "2,3"]);
        assert_eq!(stdout(&out).trim(), value);
    }
}

#[test]
fn table_empty_range_is_header_only() {
    let out = spinhl(&[
        "table", "--kind", "g", "--length", "2", "--max-part=-1", "--v", "2,3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "signature,value");
}
