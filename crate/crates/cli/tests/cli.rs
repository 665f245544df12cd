use std::process::{Command, Output};

fn plie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plie")).args(args).env_remove("PLIE_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn jacobi_suite_passes() {
    let out = plie(&["verify", "--suite", "jacobi", "--n", "2", "--d", "2", "--kappa", "1,0", "--samples", "50", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["suite"], "jacobi");
    assert_eq!(report["seed"], 42);
    assert_eq!(report["params"]["kappa"], serde_json::json!([1.0, 0.0]));
    for key in ["samples", "tolerance", "max_residual", "failures", "checks"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn zero_d_is_a_configuration_error() {
    let out = plie(&["verify", "--suite", "jacobi", "--n", "2", "--d", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d must be ≥ 1"));
    assert_eq!(plie(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(plie(&["verify", "--kappa", "0,0"]).status.code(), Some(2));
}

#[test]
fn failing_and_erroring_suites() {
    let out = plie(&["verify", "--suite", "actions", "--samples", "2", "--tol-fd", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
    let out = plie(&["verify", "--suite", "decouple-m", "--samples", "4", "--radius", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn rank_suite_reports_rank() {
    let out = plie(&["verify", "--suite", "rank", "--n", "3", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let check = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "rank/degenerate").unwrap();
    assert_eq!(check["values"]["rank"], 4);
}

#[test]
fn config_file_env_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"suite": "symplectic", "n": 3, "seed": 5, "samples": 2}"#).unwrap();
    let path = config.to_str().unwrap();

    let out = plie(&["verify", "--config", path]);
    let report = json(&out);
    assert_eq!((report["suite"].as_str(), report["params"]["n"].as_u64(), report["seed"].as_u64()), (Some("symplectic"), Some(3), Some(5)));

    let out = Command::new(env!("CARGO_BIN_EXE_plie")).args(["verify", "--config", path]).env("PLIE_SEED", "11").output().unwrap();
    assert_eq!(json(&out)["seed"], 11);

    let out = Command::new(env!("CARGO_BIN_EXE_plie"))
        .args(["verify", "--config", path, "--seed", "12", "--n", "2"])
        .env("PLIE_SEED", "11")
        .output()
        .unwrap();
    let report = json(&out);
    assert_eq!((report["seed"].as_u64(), report["params"]["n"].as_u64()), (Some(12), Some(2)));

    std::fs::write(&config, r#"{"sute": "rank"}"#).unwrap();
    assert_eq!(plie(&["verify", "--config", path]).status.code(), Some(2));
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = plie(&["verify", "--suite", "rank", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
}

#[test]
fn gen_point_contract() {
    let out = plie(&["gen-point", "--space", "spin", "--n", "4", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let point = json(&out);
    assert_eq!(point["a"].as_array().unwrap().len(), 4);
    assert_eq!(point["b"].as_array().unwrap().len(), 4);
    assert_eq!(out.stdout, plie(&["gen-point", "--space", "spin", "--n", "4", "--seed", "7"]).stdout);

    let out = plie(&["gen-point", "--space", "s", "--n", "3", "--d", "2", "--radius", "0.3", "--seed", "1"]);
    let point = json(&out);
    let entries = point["a"].as_array().unwrap().iter().chain(point["b"].as_array().unwrap()).flat_map(|r| r.as_array().unwrap().clone());
    for z in entries {
        assert!(z[0].as_f64().unwrap().hypot(z[1].as_f64().unwrap()) <= 0.3);
    }
    assert_eq!(plie(&["gen-point", "--space", "torus"]).status.code(), Some(2));
    assert_eq!(plie(&["gen-point", "--n", "0"]).status.code(), Some(2));
}
