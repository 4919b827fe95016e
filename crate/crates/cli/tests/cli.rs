//! End-to-end tests of the command-line interface: exit codes, file
//! formats, configuration precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

const TAU: f64 = std::f64::consts::TAU;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ion-gate-forge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ion-gate-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

fn design_file(name: &str, args: &[&str]) -> PathBuf {
    let path = tmp(name);
    let mut all = vec!["design"];
    all.extend_from_slice(args);
    all.push("-o");
    let p = path.to_str().unwrap();
    all.push(p);
    let out = run(&all);
    assert!(out.status.success(), "design failed: {out:?}");
    path
}

#[test]
fn design_protocol_i_constants() {
    let out = run(&["design", "--protocol", "I"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let tau1 = v["tau1"].as_f64().unwrap();
    let total = v["total_time_T"].as_f64().unwrap();
    let theta = v["theta"].as_f64().unwrap();
    assert!(
        (tau1 / TAU - 0.5386).abs() < 1e-3,
        "tau1/2pi = {}",
        tau1 / TAU
    );
    assert!((total / TAU - 1.0772).abs() < 2e-3);
    assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert_eq!(v["scale_N"].as_u64(), Some(3));
}

#[test]
fn design_protocol_ii_requires_t() {
    let out = run(&["design", "--protocol", "II"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn design_protocol_ii_residuals() {
    let out = run(&["design", "--protocol", "II", "--T", "0.628"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert!(v["residual_Cc"].as_f64().unwrap() <= 1e-9);
    assert!(v["residual_Cr"].as_f64().unwrap() <= 1e-9);
    assert!(v["tau3"].as_f64().is_some());
}

#[test]
fn verify_accepts_solved_design() {
    let path = design_file("verify-ok.json", &["--protocol", "I"]);
    let out = run(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "verify failed: {out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert!(v["motional_dependence"].as_f64().unwrap() <= 1e-6);
    assert!(v["closure_error"].as_f64().unwrap() <= 1e-9);
    let phi = v["phi"].as_object().unwrap();
    for key in ["pp", "pm", "mp", "mm"] {
        assert!(phi.contains_key(key), "phi missing {key}");
    }
}

#[test]
fn verify_rejects_perturbed_design() {
    let path = design_file("verify-perturbed.json", &["--protocol", "I"]);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let tau2 = v["tau2"].as_f64().unwrap();
    v["tau2"] = serde_json::json!(tau2 + 1e-3);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();

    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4), "expected mismatch: {out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert!(report["closure_error"].as_f64().unwrap() > 1e-9);
}

#[test]
fn trajectory_format_and_selection_rule() {
    let path = design_file("traj.json", &["--protocol", "I"]);
    let out = run(&[
        "trajectory",
        path.to_str().unwrap(),
        "--config",
        "pm",
        "--alpha0",
        "1",
        "--dt",
        "0.05",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,mode,s1,s2,X,P"));

    let mut com_jumps = 0usize;
    let mut str_jumps = 0usize;
    let mut prev: Option<(String, String)> = None;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 6, "bad row {line}");
        assert_eq!(cols[2], "1");
        assert_eq!(cols[3], "-1");
        let x: f64 = cols[4].parse().unwrap();
        let p: f64 = cols[5].parse().unwrap();
        if cols[1] == "com" {
            // config (+,-): zero COM kick, so the trace is a pure circle
            assert!(
                (x * x + p * p - 2.0).abs() < 1e-9,
                "COM radius broke: {line}"
            );
        }
        // duplicated (t, mode) rows mark kick instants
        let key = (cols[0].to_string(), cols[1].to_string());
        if prev.as_ref() == Some(&key) {
            if cols[1] == "com" {
                com_jumps += 1;
            } else {
                str_jumps += 1;
            }
        }
        prev = Some(key);
    }
    // Protocol I expands to 4 kick events; each appears twice (pre/post)
    assert_eq!(com_jumps, 4);
    assert_eq!(str_jumps, 4);
}

#[test]
fn sweep_schema_and_trend() {
    let out = run(&[
        "sweep",
        "--protocol",
        "II",
        "--tmin",
        "0.3",
        "--tmax",
        "3.0",
        "--points",
        "5",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T,Np,Xr,Pr,residual_theta"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for w in rows.windows(2) {
        assert!(w[0][0] < w[1][0], "rows must be ordered by T");
        assert!(w[0][1] >= w[1][1], "Np grows as T shrinks");
        assert!(w[0][2] >= w[1][2], "Xr grows as T shrinks");
        assert!(w[0][3] >= w[1][3], "Pr grows as T shrinks");
    }
}

#[test]
fn sweep_rejects_bad_range() {
    let out = run(&[
        "sweep",
        "--protocol",
        "II",
        "--tmin",
        "2.0",
        "--tmax",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sweep", "--protocol", "I", "--tmin", "0.5", "--tmax", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cz95_truth_table_and_inputs() {
    let out = run(&["cz95", "--truth-table"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let phases = v["phases"].as_array().unwrap();
    let expect = [1.0, 1.0, 1.0, -1.0];
    for (p, e) in phases.iter().zip(expect) {
        assert!((p[0].as_f64().unwrap() - e).abs() <= 1e-9);
        assert!(p[1].as_f64().unwrap().abs() <= 1e-9);
    }
    assert!(v["leakage"].as_f64().unwrap() <= 1e-10);

    let out = run(&["cz95", "--input", "gg"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert!((v["amplitude"][0].as_f64().unwrap() - 1.0).abs() <= 1e-9);

    let out = run(&["cz95", "--input", "ee"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert!((v["amplitude"][0].as_f64().unwrap() + 1.0).abs() <= 1e-9);

    let out = run(&["cz95"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = tmp("run.cfg");
    std::fs::write(&cfg, "# sweep defaults\neta = 0.5   # large coupling\n").unwrap();

    // config file read through the environment variable
    let out = bin()
        .args(["design", "--protocol", "I"])
        .env("ION_GATE_FORGE_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let n_large_eta = v["scale_N"].as_u64().unwrap();
    assert!(
        n_large_eta < 3,
        "eta = 0.5 needs fewer repetitions, got {n_large_eta}"
    );

    // a flag overrides the file
    let out = bin()
        .args(["design", "--protocol", "I", "--eta", "0.178"])
        .env("ION_GATE_FORGE_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["scale_N"].as_u64(), Some(3));

    // unknown keys are a usage error
    let bad = tmp("bad.cfg");
    std::fs::write(&bad, "frobnicate = 7\n").unwrap();
    let out = bin()
        .args(["design", "--protocol", "I", "--config-file"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let path = tmp("design-out.json");
    let out = run(&["design", "--protocol", "I", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["protocol"].as_str(), Some("I"));
}
