//! End-to-end checks of the binary: exit codes, determinism, file formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn billiard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_billiard"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("billiard-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn generate_is_deterministic_and_well_formed() {
    let out1 = tmp("gen1.txt");
    let out2 = tmp("gen2.txt");
    for out in [&out1, &out2] {
        let r = billiard(&[
            "generate",
            "--theta",
            "1,sqrt(3),sqrt(2)",
            "--n",
            "20000",
            "--seed",
            "42",
            "-o",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "same config and seed must give identical bytes");
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# theta=1,sqrt(3),sqrt(2)"));
    assert!(header.contains("origin=0"));
    let word = lines.next().unwrap();
    assert_eq!(word.len(), 20000);
    assert!(word.bytes().all(|c| (b'1'..=b'3').contains(&c)));
    std::fs::remove_file(out1).ok();
    std::fs::remove_file(out2).ok();
}

#[test]
fn generate_rejects_symbolic_direction() {
    let r = billiard(&["generate", "--theta", "1,t1,t2", "--n", "10"]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn generate_sturmian_two_letters() {
    let r = billiard(&["generate", "--theta", "1,sqrt(2)-1", "--n", "1000"]);
    assert!(r.status.success());
    let text = String::from_utf8(r.stdout).unwrap();
    let word = text.lines().nth(1).unwrap();
    assert!(word.bytes().all(|c| c == b'1' || c == b'2'));
    assert!(word.bytes().any(|c| c == b'1') && word.bytes().any(|c| c == b'2'));
}

#[test]
fn sampling_exhaustion_exits_3() {
    // an absurd margin makes every candidate parameter non-generic
    let r = billiard(&[
        "generate",
        "--theta",
        "1,sqrt(3),sqrt(2)",
        "--n",
        "100",
        "--epsilon",
        "0.45",
    ]);
    assert_eq!(r.status.code(), Some(3));
}

#[test]
fn bad_direction_exits_2() {
    let r = billiard(&["generate", "--theta", "2,sqrt(3)", "--n", "10"]);
    assert_eq!(r.status.code(), Some(2));
    let r = billiard(&["generate", "--theta", "1,sqrt(", "--n", "10"]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn balance_csv_has_verdicts_and_series() {
    let out = tmp("balance.csv");
    let r = billiard(&[
        "balance",
        "--theta",
        "1,sqrt(3),sqrt(2)",
        "--n",
        "50000",
        "--max-factor-len",
        "2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# direction=1,sqrt(3),sqrt(2)"));
    assert!(text.contains("irrationality"));
    let certified = text.matches("certified-bounded").count();
    assert_eq!(certified, 3);
    // per-factor series files exist with the gnuplot columns
    let series = out.with_extension("22.series.csv");
    let series_text = std::fs::read_to_string(&series).unwrap();
    assert!(series_text.starts_with("n,count,expected,d_n,running_max"));
    for f in ["11", "12", "13", "21", "22", "23", "31", "32", "33"] {
        std::fs::remove_file(out.with_extension(format!("{f}.series.csv"))).ok();
    }
    std::fs::remove_file(out).ok();
}

#[test]
fn freqs_table_shape_and_errors() {
    let r = billiard(&[
        "freqs",
        "--theta",
        "1,sqrt(3),sqrt(2)",
        "--n",
        "100000",
        "--max-factor-len",
        "2",
    ]);
    assert!(r.status.success());
    let text = String::from_utf8(r.stdout).unwrap();
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("factor"))
        .collect();
    // 3 letters + 7 pairs
    assert_eq!(data_rows.len(), 10);
    for row in data_rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 5);
        assert!(!cols[1].is_empty(), "closed form expected for {row}");
        let err: f64 = cols[3].parse().unwrap();
        assert!(err < 1e-2);
    }
}

#[test]
fn freqs_json_carries_provenance() {
    let r = billiard(&[
        "freqs",
        "--theta",
        "1,sqrt(3),sqrt(2)",
        "--n",
        "20000",
        "--format",
        "json",
    ]);
    assert!(r.status.success());
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["direction"], "1,sqrt(3),sqrt(2)");
    let rows = v["rows"].as_array().unwrap();
    assert!(rows
        .iter()
        .all(|r| r["closed_form_provenance"] == "closed-form"));
}

#[test]
fn brs_verdicts_and_permuted_direction() {
    let r = billiard(&["brs", "--theta", "1,sqrt(3),sqrt(2)"]);
    assert!(r.status.success());
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 7);
    let no_center = cells
        .iter()
        .filter(|c| c["verdict"]["reason"]["reason"] == "no-symmetry-center")
        .count();
    assert_eq!(no_center, 6);
    assert_eq!(v["permuted"], false);

    // theta_1 < theta_2 reduces by permutation, same verdict multiset
    let r = billiard(&["brs", "--theta", "1,sqrt(2),sqrt(3)"]);
    assert!(r.status.success());
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["permuted"], true);
    let cells = v["cells"].as_array().unwrap();
    let no_center = cells
        .iter()
        .filter(|c| c["verdict"]["reason"]["reason"] == "no-symmetry-center")
        .count();
    assert_eq!(no_center, 6);
}

#[test]
fn brs_rational_component_accepted_with_caveat() {
    let r = billiard(&["brs", "--theta", "1,2,sqrt(2)"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    let notes = v["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("declared assumption")));
}

#[test]
fn brs_chamber_tie_exits_4() {
    let r = billiard(&["brs", "--theta", "1,1,sqrt(2)"]);
    assert_eq!(r.status.code(), Some(4));
}

#[test]
fn brs_wrong_dimension_exits_4() {
    let r = billiard(&["brs", "--theta", "1,sqrt(2),sqrt(3),sqrt(5)"]);
    assert_eq!(r.status.code(), Some(4));
}

#[test]
fn complexity_matches_cubic_formula_at_small_lengths() {
    let r = billiard(&[
        "complexity",
        "--theta",
        "1,sqrt(3),sqrt(2)",
        "--n",
        "100000",
        "--max-factor-len",
        "4",
    ]);
    assert!(r.status.success());
    let text = String::from_utf8(r.stdout).unwrap();
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("len"))
        .collect();
    // cubic billiard words have p(n) = n^2 + n + 1
    assert_eq!(rows, vec!["1,3", "2,7", "3,13", "4,21"]);
}

#[test]
fn selftest_passes_on_clean_build() {
    let r = billiard(&["selftest"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stdout));
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.contains(" 0 failed"));
}
