//! End-to-end checks of the binary: exit codes, file outputs, the field
//! synthesis, and flag behavior.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ripple() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ripple"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    ripple().args(args).output().unwrap()
}

#[test]
fn check_exit_codes_follow_the_gate() {
    let dir = tempfile::tempdir().unwrap();

    let ok = write_config(
        dir.path(),
        "eq.json",
        r#"{"n": 4, "initial": "equilibrium"}"#,
    );
    let out = run(&["check", "--config", ok.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("gate_72 = true"));
    assert!(stdout.contains("phi0_plus = 3.3333333333333331e-1"));
    assert!(stdout.contains("phi0_minus = 0.0000000000000000e0"));

    // Exactly on the gate: 2 * fl(1/12)^2 == fl(1/72).
    let boundary = write_config(
        dir.path(),
        "boundary.json",
        &format!(r#"{{"n": 4, "initial": "single:1:{}"}}"#, 1.0 / 12.0),
    );
    let out = run(&["check", "--config", boundary.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("gate_72 = false"));

    let out = run(&[
        "check",
        "--config",
        dir.path().join("absent.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write_config(
        dir.path(),
        "bad.json",
        r#"{"n": 4, "initial": "equilibrium", "x": 1}"#,
    );
    let out = run(&["check", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains(r#""category":"Usage""#), "got {stdout}");
}

#[test]
fn quiet_suppresses_informational_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "eq.json",
        r#"{"n": 4, "initial": "equilibrium"}"#,
    );
    let out = run(&["check", "--quiet", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(out.stderr.is_empty());
}

#[test]
fn solve_failure_emits_error_json_and_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "gate.json",
        &format!(r#"{{"n": 4, "initial": "single:1:{}"}}"#, 1.0 / 12.0),
    );
    let out = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains(r#""category":"GateViolation""#),
        "got {stdout}"
    );
}

#[test]
fn branch_flag_overrides_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.json",
        r#"{"n": 8, "initial": "single:1:0.05", "solver": "rk4", "dt": 0.001, "t_final": 0.01}"#,
    );
    let out_plus = dir.path().join("plus");
    let out_minus = dir.path().join("minus");
    for (branch, out) in [("plus", &out_plus), ("minus", &out_minus)] {
        let s = run(&[
            "solve",
            "--quiet",
            "--branch",
            branch,
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(s.status.success());
    }
    // The two branches start from different means, so the first trajectory
    // row (t = 0, n = 0) differs.
    let first_row = |dir: &Path| {
        let text = std::fs::read_to_string(dir.join("rk4_trajectory.csv")).unwrap();
        text.lines().nth(1).unwrap().to_string()
    };
    assert_ne!(first_row(&out_plus), first_row(&out_minus));
}

#[test]
fn field_synthesizes_the_initial_datum_and_checks_parseval() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.json",
        r#"{"n": 16, "initial": "single:1:0.05", "solver": "picard", "t": 0.05, "m": 50}"#,
    );
    let out_dir = dir.path().join("out");
    let s = run(&[
        "solve",
        "--quiet",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        out_dir.to_str().unwrap(),
    ]);
    assert!(s.status.success());

    let out = run(&[
        "field",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        out_dir.to_str().unwrap(),
        "--at",
        "0.0",
        "--points",
        "65",
    ]);
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("using stored sample t = 0.0"),
        "got {stderr}"
    );

    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("x,u,u_x"));
    let rows: Vec<(f64, f64, f64)> = lines
        .map(|l| {
            let cols: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
            (cols[0], cols[1], cols[2])
        })
        .collect();
    assert_eq!(rows.len(), 65);

    // At t = 0 the field is phi_0 + 2 * 0.05 * cos(2 pi x / L).
    let phi0 = {
        let s0 = 2.0 * 0.05f64 * 0.05;
        (1.0 + (1.0 - 36.0 * s0).sqrt()) / 6.0
    };
    for &(x, u, _) in &rows {
        let expected = phi0 + 2.0 * 0.05 * x.cos();
        assert!(
            (u - expected).abs() <= 1e-12,
            "u({x}) = {u}, expected {expected}"
        );
    }

    // Parseval on the emitted data: quadrature of u_x^2 against the E1-based
    // value from the diagnostics CSV at the same time.
    let quad: f64 = rows.iter().map(|&(_, _, ux)| ux * ux).sum::<f64>() / rows.len() as f64
        * (2.0 * std::f64::consts::PI);
    let diagnostics = std::fs::read_to_string(out_dir.join("picard_diagnostics.csv")).unwrap();
    let first = diagnostics.lines().nth(1).unwrap();
    let ux_l2_spectral: f64 = first.split(',').nth(5).unwrap().parse().unwrap();
    let rel = (quad - ux_l2_spectral).abs() / ux_l2_spectral;
    assert!(rel <= 1e-8, "Parseval recheck off by {rel}");
}

#[test]
fn equilibrium_solves_identically_in_both_solvers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "eq.json",
        r#"{"n": 8, "initial": "equilibrium", "solver": "both",
            "t": 0.1, "m": 100, "dt": 0.001, "t_final": 0.1}"#,
    );
    let out_dir = dir.path().join("out");
    let s = run(&[
        "solve",
        "--quiet",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        out_dir.to_str().unwrap(),
    ]);
    assert!(s.status.success());

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["cross_method"]["sup_h_distance"], 0.0);
    assert_eq!(report["cross_method"]["samples_compared"], 101);

    // The synthesized field at any stored time is the constant 1/3 with a
    // vanishing derivative.
    let out = run(&[
        "field",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        out_dir.to_str().unwrap(),
        "--at",
        "0.07",
    ]);
    assert!(out.status.success());
    for line in String::from_utf8(out.stdout).unwrap().lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[1] - 1.0 / 3.0).abs() <= 1e-14);
        assert!(cols[2].abs() <= 1e-14);
    }
}

#[test]
fn field_without_a_stored_trajectory_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.json",
        r#"{"n": 4, "initial": "equilibrium"}"#,
    );
    let out = run(&[
        "field",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        dir.path().join("nothing-here").to_str().unwrap(),
        "--at",
        "0.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("no stored trajectory"));
}

#[test]
fn thread_cap_does_not_change_any_output_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.json",
        r#"{"n": 8, "initial": "single:1:0.05", "solver": "picard", "t": 0.05, "m": 20}"#,
    );
    let run_with = |threads: &str, out: &str| {
        let out_dir = dir.path().join(out);
        let s = ripple()
            .env("RIPPLE_THREADS", threads)
            .args([
                "solve",
                "--quiet",
                "--config",
                cfg.to_str().unwrap(),
                "--output",
                out_dir.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(s.status.success());
        out_dir
    };
    let serial = run_with("1", "serial");
    let parallel = run_with("4", "parallel");
    for name in ["picard_trajectory.csv", "picard_diagnostics.csv", "report.json"] {
        assert_eq!(
            std::fs::read(serial.join(name)).unwrap(),
            std::fs::read(parallel.join(name)).unwrap(),
            "{name} differs across thread counts"
        );
    }
}
