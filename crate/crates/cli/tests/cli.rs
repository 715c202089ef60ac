use std::process::Command;

fn pmmeas() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pmmeas"))
}

#[test]
fn verify_passes_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = pmmeas()
        .args(["verify", "--suite", "measures,characterization", "--seed", "3", "--out"])
        .arg(&out)
        .env("PMMEAS_THREADS", "2")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["config"]["seed"], 3);
    assert_eq!(report["passed"], true);
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn config_errors_exit_two() {
    let out = pmmeas().args(["verify", "--suite", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, "{ not json").unwrap();
    let status = pmmeas().args(["verify", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(2));

    let status = pmmeas()
        .args(["verify", "--suite", ""])
        .env("PMMEAS_THREADS", "zero")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn failing_suite_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"suites": ["triangle-axioms"], "negative_tests": false,
            "delta_ops": [{"kind": "tau_LA", "L": {"kind": "K_alpha", "alpha": 1}, "A": {"kind": "tnorm-D"}}]}"#,
    )
    .unwrap();
    let out = pmmeas().args(["verify", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL triangle-axioms"));
}

#[test]
fn empty_suite_list_exits_zero() {
    let out = pmmeas().args(["verify", "--suite", ""]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["suites"].as_array().unwrap().len(), 0);
}

#[test]
fn explore_finds_pi_top_witness() {
    let out = pmmeas()
        .args(["explore", "--mode", "find-pi-top-violation", "--weights", "1,2,4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "found");
    assert_ne!(report["witness"]["mu_E"], report["witness"]["mu_F"]);

    let out = pmmeas().args(["explore", "--mode", "sideways"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explore_census_runs() {
    let out = pmmeas()
        .args(["explore", "--mode", "s-tau-census", "--budget", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["census"].as_array().unwrap().len(), 5);
}

#[test]
fn export_writes_csv_and_reports_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eps.csv");
    let status = pmmeas()
        .args(["export", "--what", "epsilon:1", "--x-max", "2", "--step", "0.1", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 22);

    let lambda = dir.path().join("lambda.csv");
    let status = pmmeas()
        .args(["export", "--what", "lambda:00111", "--out"])
        .arg(&lambda)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(std::fs::read_to_string(&lambda).unwrap().starts_with("x,F\n"));

    let status = pmmeas()
        .args(["export", "--what", "epsilon:1", "--out"])
        .arg(dir.path().join("nope").join("x.csv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
