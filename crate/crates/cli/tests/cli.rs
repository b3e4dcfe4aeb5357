//! End-to-end tests of the binary: golden files for the stable reports,
//! run-twice byte identity for the seeded sweeps, and exit-code contracts.
//!
//! Regenerate golden files with `UPDATE_GOLDEN=1 cargo test -p billiard-lab`.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_billiard-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn check_golden(name: &str, args: &[&str], expect_code: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(expect_code), "{args:?}: {out:?}");
    let text = stdout(&out);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &text).expect("write golden");
        return;
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(text, expected, "golden mismatch for {name}");
}

fn corpus_dir() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .display()
        .to_string()
}

// ---------------------------------------------------------------------------
// golden files
// ---------------------------------------------------------------------------

#[test]
fn golden_pluecker_nodal_cubic() {
    check_golden(
        "pluecker_nodal_cubic.json",
        &["pluecker", "--curve", "y^2 - x^2*(x+1)"],
        0,
    );
}

#[test]
fn golden_puiseux_cusp() {
    check_golden("puiseux_cusp.json", &["puiseux", "--curve", "y^2 - x^3"], 0);
}

#[test]
fn golden_puiseux_hyperbola_infinity() {
    check_golden(
        "puiseux_hyperbola_infinity.json",
        &["puiseux", "--curve", "x*y - 1", "--infinity"],
        0,
    );
}

#[test]
fn golden_invariants_tacnodal_quintic() {
    check_golden(
        "invariants_tacnodal_quintic.json",
        &["invariants", "--curve", "y^2 - x^4 + x^5", "--projective"],
        0,
    );
}

#[test]
fn golden_audit_asymmetric() {
    check_golden(
        "audit_asymmetric.json",
        &["audit", "--r", "3/2", "--triples", "(3,2,1)"],
        2,
    );
}

#[test]
fn golden_audit_symmetric() {
    check_golden(
        "audit_symmetric.json",
        &["audit", "--r", "2", "--triples", "(2,1,1);(4,2,0.75)"],
        0,
    );
}

#[test]
fn golden_lemma_scan() {
    check_golden(
        "lemma_scan.json",
        &["lemma-scan", "--rs", "3/2,2,3", "--max-p", "6"],
        0,
    );
}

#[test]
fn golden_asymptotics_cusp_z() {
    check_golden(
        "asymptotics_cusp_z.json",
        &[
            "asymptotics",
            "--curve",
            "y^2 - x^3",
            "--target",
            "y",
            "--coordinate",
            "z",
        ],
        0,
    );
}

#[test]
fn golden_certify_hyperbola() {
    check_golden(
        "certify_hyperbola.json",
        &["certify", "--curve", "x*y - 1"],
        0,
    );
}

#[test]
fn golden_certify_cuspidal_cubic() {
    check_golden(
        "certify_cuspidal_cubic.json",
        &["certify", "--curve", "y^2 - x^3"],
        2,
    );
}

#[test]
fn golden_symmetry_circle_pair() {
    check_golden(
        "symmetry_circle_pair.json",
        &[
            "symmetry",
            "--psi",
            "x^2 + y^2 - 1",
            "--gamma",
            "(x^2 + y^2 - 1)*(x^2 + y^2 - 4)",
            "--n",
            "6",
        ],
        0,
    );
}

// ---------------------------------------------------------------------------
// determinism of the seeded sweeps
// ---------------------------------------------------------------------------

#[test]
fn invariance_is_byte_deterministic() {
    let args = [
        "invariance",
        "--curve-ellipse",
        "2,1",
        "--integral",
        "x^2/4 + y^2",
        "--n",
        "200",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report["schema"], "1");
    assert!(report["max_residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn orbit_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    let mut outputs = Vec::new();
    for csv in [&csv_a, &csv_b] {
        let out = run(&[
            "orbit",
            "--curve-ellipse",
            "1,1",
            "--start",
            "2.5,0.3",
            "--n",
            "40",
            "--integral",
            "x^2 + y^2",
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(out.stdout);
    }
    let table = fs::read_to_string(&csv_a).unwrap();
    assert_eq!(table, fs::read_to_string(&csv_b).unwrap());
    assert!(table.starts_with("k,x,y,s,residual\n"));
    assert_eq!(table.lines().count(), 42);
}

#[test]
fn seed_changes_the_invariance_sample() {
    let base = [
        "invariance",
        "--curve-ellipse",
        "3,0.5",
        "--integral",
        "x^2/9 + 4*y^2",
        "--n",
        "50",
    ];
    let a = run(&[&base[..], &["--seed", "1"]].concat());
    let b = run(&[&base[..], &["--seed", "2"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

// ---------------------------------------------------------------------------
// exit codes and errors
// ---------------------------------------------------------------------------

#[test]
fn non_invariant_polynomial_exits_two() {
    let out = run(&[
        "invariance",
        "--curve-ellipse",
        "2,1",
        "--integral",
        "x^2 + y^2",
        "--n",
        "20",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["invariant"], false);
}

#[test]
fn parse_errors_exit_one() {
    let out = run(&["pluecker", "--curve", "y^2 - (x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn mismatched_audit_ratio_exits_one() {
    let out = run(&["audit", "--r", "2", "--triples", "(3,2,1)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "invariance",
        "orbit",
        "symmetry",
        "puiseux",
        "invariants",
        "pluecker",
        "audit",
        "lemma-scan",
        "asymptotics",
        "certify",
    ] {
        let out = run(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub} --help");
        assert!(stdout(&out).contains("--help"), "{sub} help text");
    }
}

// ---------------------------------------------------------------------------
// file plumbing
// ---------------------------------------------------------------------------

#[test]
fn corpus_summary_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("summary.csv");
    let out = run(&[
        "invariants",
        "--corpus",
        &corpus_dir(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(
        lines.next(),
        Some("name,degree,genus,delta_sum,hessian_sum,pluecker_residual")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.contains(&"conic,2,0,0,0,0"));
    assert!(rows.contains(&"smooth_quartic,4,3,0,24,0"));
    // the identities hold on the whole shipped corpus
    for row in rows {
        assert!(row.ends_with(",0"), "nonzero residual in `{row}`");
    }
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "certify",
        "--curve",
        "y - x^2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], "1");
    assert_eq!(report["verdict"], "ConicConsistent");
}

#[test]
fn symmetry_reads_a_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.txt");
    fs::write(&points, "1,0\n0,1\n-1,0\n").unwrap();
    let out = run(&[
        "symmetry",
        "--psi",
        "x^2 + y^2 - 1",
        "--gamma",
        "(x^2 + y^2 - 1)*(x^2 + y^2 - 9)",
        "--points",
        points.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["points"], 3);
    assert_eq!(report["all_symmetric"], true);
}

#[test]
fn triples_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triples.txt");
    fs::write(&path, "# perfect square and its stretch\n(2,1,1)\n(4,2,0.75)\n").unwrap();
    let out = run(&["audit", "--r", "2", "--triples", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["symmetric"], true);
}
