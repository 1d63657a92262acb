//! End-to-end CLI checks: exit codes, golden-file determinism, and the
//! documented output schemas.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dimlab"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn dimlab")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_seq_reports_count() {
    let out = run(&["gen", "seq", "--s", "1", "--mmax", "1024"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("points=1025"));
}

#[test]
fn gen_bm_counts_digit_powers() {
    let spec = fixtures().join("carpet_e.json");
    let out = run(&["gen", "bm", "--spec", spec.to_str().unwrap(), "--level", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("points=106"), "{}", stdout(&out));
}

#[test]
fn percolation_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = dir.path().join("a.json");
    let f2 = dir.path().join("b.json");
    for f in [&f1, &f2] {
        let out = run(&[
            "gen",
            "percolation",
            "--n",
            "2",
            "--M",
            "3",
            "--p",
            "0.5",
            "--depth",
            "5",
            "--seed",
            "42",
            "--out",
            f.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let b1 = std::fs::read(&f1).unwrap();
    let b2 = std::fs::read(&f2).unwrap();
    assert!(!b1.is_empty());
    assert_eq!(b1, b2, "same seed and flags must give identical bytes");
}

#[test]
fn estimate_box_via_binary_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("e1.dlps");
    let out = run(&[
        "gen", "seq", "--s", "1", "--mmax", "65536", "--format", "bin", "--out",
        data.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "estimate",
        "--input",
        data.to_str().unwrap(),
        "--kind",
        "box",
        "--scales",
        "3:20",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "theta,value,residual");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let value: f64 = row[1].parse().unwrap();
    assert!((value - 0.5).abs() < 0.05, "box estimate {value}");
}

#[test]
fn estimate_intermediate_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("e1.json");
    run(&["gen", "seq", "--s", "1", "--mmax", "16384", "--out", data.to_str().unwrap()]);
    let out = run(&[
        "estimate",
        "--input",
        data.to_str().unwrap(),
        "--kind",
        "intermediate",
        "--theta",
        "0.5",
        "--scales",
        "3:12",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["kind", "theta", "scales", "values", "fit", "value"] {
        assert!(v.get(key).is_some(), "missing `{key}` in estimate report");
    }
    assert_eq!(v["kind"], "intermediate");
    assert!(v["fit"].get("slope").is_some() && v["fit"].get("residual").is_some());
}

#[test]
fn estimate_assouad_spectrum_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("e1.json");
    run(&["gen", "seq", "--s", "1", "--mmax", "65536", "--out", data.to_str().unwrap()]);
    let out = run(&[
        "estimate",
        "--input",
        data.to_str().unwrap(),
        "--kind",
        "assouad_spectrum",
        "--theta",
        "0.5",
        "--scales",
        "4:12",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - 1.0).abs() < 0.1, "spectrum estimate {value}");
    let witness = &v["witness"];
    assert!(witness["center"].is_array());
    assert!(witness["big_r"].as_f64().unwrap() > witness["small_r"].as_f64().unwrap());
    assert!(witness["count"].as_u64().unwrap() >= 1);
}

#[test]
fn formula_csv_has_exact_columns() {
    let out = run(&["formula", "seq", "--s", "1", "--kind", "intermediate", "--theta-grid", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("theta,value,residual\n"));
    // final row is theta = 1 with the box value 1/2
    let last = text.trim_end().lines().last().unwrap();
    assert!(last.starts_with("1,0.5,"), "last row `{last}`");
}

#[test]
fn formula_svg_is_svg() {
    let out = run(&["formula", "gset", "--s", "1", "--n", "2", "--alpha", "0.5", "--kind", "intermediate", "--format", "svg"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("<svg"));
}

#[test]
fn bound_qc_conformal_interval_is_degenerate() {
    let out = run(&["bound", "qc", "--dim", "1", "--n", "2", "--K", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lo"], 1.0);
    assert_eq!(v["hi"], 1.0);
}

#[test]
fn classify_sequence_pair() {
    let out = run(&["classify", "--e", "seq:1", "--f", "seq:0.5", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let json_part = &text[..text.rfind('}').unwrap() + 1];
    let v: serde_json::Value = serde_json::from_str(json_part).unwrap();
    let k = v["k_lower"].as_f64().unwrap();
    assert!((k - 2.0).abs() < 1e-6, "k_lower {k}");
    assert!(v.get("verdict").is_some() && v.get("witnesses").is_some());
}

#[test]
fn verify_chain_suite_passes() {
    let out = run(&["verify", "chain"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[pass]"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn exit_codes_for_bad_input() {
    // domain error (negative s passed with = so clap accepts the token)
    let out = run(&["gen", "seq", "--s=-1", "--mmax", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown suite
    let out = run(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // missing input file
    let out = run(&["estimate", "--input", "/nonexistent.json", "--kind", "box"]);
    assert_eq!(out.status.code(), Some(2));
    // theta required for parametric kinds
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("x.json");
    run(&["gen", "seq", "--s", "1", "--mmax", "64", "--out", data.to_str().unwrap()]);
    let out = run(&["estimate", "--input", data.to_str().unwrap(), "--kind", "intermediate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_product_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    run(&["gen", "seq", "--s", "1", "--mmax", "32", "--out", a.to_str().unwrap()]);
    let out = run(&[
        "gen", "product", "--a", a.to_str().unwrap(), "--b", a.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(&format!("points={}", 33 * 33)));
}
