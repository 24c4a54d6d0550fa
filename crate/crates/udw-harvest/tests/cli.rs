//! End-to-end checks of the command-line interface: exit codes, the JSON
//! error contract and CSV byte determinism.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_udw-harvest"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("udw-harvest-test-{name}"));
    std::fs::write(&path, contents).unwrap();
    path
}

const GOOD_CONFIG: &str = r#"{
    "dim": 1, "coupling": "derivative", "gap": 4.0, "smearing": 0.05,
    "delay": 5.0, "separation": 5.0, "time_offset": 0.0,
    "coupling_strength": 1.0
}"#;

#[test]
fn compute_emits_schema_keys_and_succeeds() {
    let cfg = write_temp("good.json", GOOD_CONFIG);
    let out = bin()
        .args(["compute", "--config", cfg.to_str().unwrap(), "--rel-tol", "1e-6"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["L", "L_AB_re", "L_AB_im", "M_re", "M_im", "M_plus_re", "negativity"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn unsupported_dimension_exits_2_with_error_field() {
    let cfg = write_temp(
        "dim4.json",
        &GOOD_CONFIG.replace("\"dim\": 1", "\"dim\": 4"),
    );
    let out = bin()
        .args(["compute", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["error"], "UnsupportedDimension");
}

#[test]
fn missing_cutoff_exits_2() {
    let cfg = write_temp(
        "nocut.json",
        &GOOD_CONFIG.replace("derivative", "amplitude"),
    );
    let out = bin()
        .args(["compute", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["error"], "MissingCutoff");
}

#[test]
fn unknown_config_keys_are_rejected() {
    let cfg = write_temp(
        "typo.json",
        &GOOD_CONFIG.replace("\"gap\"", "\"gapp\""),
    );
    let out = bin()
        .args(["compute", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["error"], "InvalidConfig");
}

#[test]
fn sweep_subcommand_produces_ordered_deterministic_csv() {
    let req = r#"{
        "base": {"dim": 3, "coupling": "derivative", "gap": 4.0,
                 "smearing": 0.05, "delay": 0.0, "separation": 5.0,
                 "time_offset": 0.0, "coupling_strength": 1.0},
        "axis": "delay", "start": 4.5, "stop": 5.5, "points": 3
    }"#;
    let cfg = write_temp("sweep.json", req);
    let run = |threads: &str| {
        let out = bin()
            .args([
                "sweep",
                "--config",
                cfg.to_str().unwrap(),
                "--threads",
                threads,
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run("1");
    let b = run("3");
    assert_eq!(a, b, "CSV must be byte-identical across thread counts");
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("axis_value,"));
    let axis: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(axis.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn pointlike_sweep_fails_with_exit_3_and_sentinel() {
    let req = r#"{
        "base": {"dim": 3, "coupling": "derivative", "gap": 4.0,
                 "smearing": 0.0, "delay": 0.0, "separation": 5.0,
                 "time_offset": 0.0, "coupling_strength": 1.0},
        "axis": "delay", "start": 4.5, "stop": 5.5, "points": 2
    }"#;
    let cfg = write_temp("pointlike-sweep.json", req);
    let out = bin()
        .args(["sweep", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ERROR:WrongRegime"));
}
