use std::process::{Command, Output};

fn riskbounds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riskbounds")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bernoulli_header_and_rows() {
    let o = riskbounds(&["bernoulli", "--n", "1..4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,bound_mi,bound_ml,bound_sibson,bound_hellinger,bound_egz,upper_bound,best_method");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("1,"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",egz")));
}

#[test]
fn optional_columns_appear_in_order() {
    let o = riskbounds(&["noisy-bernoulli", "--n", "2", "--trials", "10000"]);
    assert!(o.status.success());
    let header = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(
        header,
        "n,bound_mi,bound_ml,bound_sibson,bound_hellinger,bound_egz,bound_sdpi,upper_bound,mc_risk,best_method"
    );
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["gaussian", "--n", "0..4", "--trials", "20000", "--seed", "17"];
    let a = riskbounds(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_riskbounds"))
        .args(args)
        .env("RISKBOUNDS_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = riskbounds(&["gaussian", "--n", "0..4", "--trials", "20000", "--seed", "18"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn out_path_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hs.csv");
    let o = riskbounds(&["hide-and-seek", "--n", "2..6", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 6);
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("hs.csv.json")).unwrap()).unwrap();
    let rows = side["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows[0]["nips"].is_number());
    assert_eq!(side["config"]["model"]["theta_rule"], "n^-2");
}

#[test]
fn json_format_records_parameters() {
    let o = riskbounds(&["bernoulli", "--n", "3", "--format", "json", "--alpha", "3"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &doc["rows"][0];
    assert_eq!(row["n"], 3);
    assert_eq!(row["sibson"]["params"]["alpha"], 3.0);
    assert_eq!(row["best_method"], "egz");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "n = \"4\"\nalpha = 3.0\nformat = \"json\"\n").unwrap();
    let o = riskbounds(&["bernoulli", "--config", cfg.to_str().unwrap(), "--alpha", "5"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["rows"][0]["n"], 4);
    assert_eq!(doc["rows"][0]["sibson"]["params"]["alpha"], 5.0);
    assert_eq!(doc["config"]["bounds"]["p"], 2.0);
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["bernoulli", "--n", "9..2"],
        vec!["bernoulli", "--n", "0"],
        vec!["noisy-bernoulli", "--lambda", "0.6"],
        vec!["hide-and-seek", "--n", "1"],
        vec!["hide-and-seek", "--theta-rule", "sometimes"],
        vec!["bernoulli", "--alpha", "0.5", "--n", "2"],
        vec!["bernoulli", "--format", "xml"],
        vec!["bernoulli", "--config", "/nonexistent/run.toml"],
    ] {
        let o = riskbounds(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_riskbounds"))
        .args(["bernoulli", "--n", "2"])
        .env("RISKBOUNDS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_quick_passes_and_catches_mutations() {
    let o = riskbounds(&["validate", "--quick"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    for m in ["chi-square", "sibson", "leakage"] {
        let o = riskbounds(&["validate", "--quick", "--mutate", m]);
        assert_eq!(o.status.code(), Some(1), "mutation {m} went unnoticed");
    }
}
