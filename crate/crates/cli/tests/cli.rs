use std::path::Path;
use std::process::{Command, Output};

use calogero_cli::report::{Report, Status};
use serde_json::Value;

fn calogero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_calogero")).args(args).output().expect("binary runs")
}

fn read_report(path: &Path) -> Report {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classical_lax_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = calogero(&["verify", "classical-lax", "--n", "3", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_report(&path);
    assert!(report.passed());
    assert_eq!(report.summary.total, 2);
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS classical-lax/n3/residual"));
}

#[test]
fn perturbed_m_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = calogero(&["verify", "quantum-commute", "--n", "3", "--perturb-m", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = read_report(&path);
    let failed: Vec<_> = report.checks.iter().filter(|c| c.status == Status::Fail).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.residual_witness.as_deref().is_some_and(|w| !w.is_empty())));

    let out = calogero(&["verify", "classical-lax", "--n", "3", "--perturb-m"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("witness: entry"));
}

#[test]
fn quantum_lax_couplings() {
    assert_eq!(calogero(&["verify", "quantum-lax", "--n", "3"]).status.code(), Some(0));
    assert_eq!(
        calogero(&["verify", "quantum-lax", "--n", "3", "--coupling", "k-plus-1"]).status.code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "nonsense"],
        vec!["verify", "classical-lax", "--n", "1"],
        vec!["verify", "quantum-lax", "--coupling", "k"],
        vec!["roots", "build", "--type", "E9"],
        vec!["roots", "build", "--type", "D3"],
        vec!["simulate", "--dt", "-1"],
        vec!["simulate", "--n", "3", "--q", "0,1"],
        vec!["frobnicate"],
        vec![],
    ] {
        assert_eq!(calogero(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(calogero(&["--help"]).status.code(), Some(0));
}

#[test]
fn roots_emit_json() {
    let out = calogero(&["roots", "build", "--type", "E8", "--check", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let dump: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(dump["type"], "E8");
    assert_eq!(dump["roots"].as_array().unwrap().len(), 240);
    assert_eq!(dump["simple"].as_array().unwrap().len(), 8);
    let cox = dump["coxeter_matrix"].as_array().unwrap();
    assert_eq!(cox.len(), 8);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS roots/E8/axioms"));

    let out = calogero(&["roots", "build", "--type", "g2", "--emit", "json"]);
    let dump: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(dump["coxeter_matrix"], serde_json::json!([[1, 6], [6, 1]]));
    assert_eq!(dump["multiplicity"].as_object().unwrap().len(), 2);
}

#[test]
fn simulate_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let rep = dir.path().join("sim.json");
    let out = calogero(&[
        "simulate",
        "--n",
        "3",
        "--k",
        "1",
        "--dt",
        "1e-3",
        "--t-end",
        "10",
        "--csv",
        csv.to_str().unwrap(),
        "--report",
        rep.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), "t,q1,q2,q3,p1,p2,p3,I1,I2,I3");
    assert_eq!(text.lines().count(), 1 + 1001);
    let report = read_report(&rep);
    assert_eq!(report.summary.passed, 3);
    assert_eq!(report.checks[0].details["steps"], 10_000);

    let out = calogero(&["simulate", "--n", "4", "--integrator", "leapfrog", "--t-end", "2", "--tolerance", "1e-4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn dunkl_commands() {
    for args in [
        ["dunkl", "commute", "--type", "B2"],
        ["dunkl", "restrict", "--type", "A2"],
        ["dunkl", "gauge", "--type", "A1"],
        ["dunkl", "classical", "--type", "G2"],
    ] {
        let out = calogero(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
    // no invariant generators for G2: skipped, not failed
    let out = calogero(&["dunkl", "restrict", "--type", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("SKIP dunkl-restrict/G2/invariants"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        calogero(&["verify", "involution", "--n", "3", "--quiet", "--report", path.to_str().unwrap()]);
        read_report(&path).without_timing().to_json()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn default_matrix() {
    if std::env::var_os("CALOGERO_SLOW").is_none() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.json");
    let out = calogero(&["all", "--quiet", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_report(&path);
    assert_eq!(report.summary.failed, 0);
    assert!(report.checks.iter().any(|c| c.check_id == "roots/F4/axioms"));
    assert!(report.checks.iter().any(|c| c.check_id == "dunkl-commute/F4/degree-5"));
}
