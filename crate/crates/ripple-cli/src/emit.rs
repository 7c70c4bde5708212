//! Deterministic file emission and re-ingestion.
//!
//! CSV bodies are byte-stable for a fixed config: floats are printed with 17
//! significant digits (lossless for f64), headers carry no timestamps, and
//! all rows are written in one fixed order. Versions and run metadata go in
//! the JSON report only.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use ripple::{DiagnosticsRecord, ModeVector, Trajectory};

use crate::CliError;

/// 17 significant digits: enough to reproduce any f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const TRAJECTORY_HEADER: &str = "t,n,re,im";
pub const DIAGNOSTICS_HEADER: &str =
    "t,h_norm,E1,constraint_residual,zero_mean_residual,ux_l2_spectral,ux_l2_physical";
pub const FIELD_HEADER: &str = "x,u,u_x";

/// Long-form trajectory rows: one `(t, n, re, im)` line per stored mode per
/// sample.
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for (t, state) in traj.times().iter().zip(traj.states()) {
        for (n, c) in state.coeffs().iter().enumerate() {
            out.push_str(&fmt_f64(*t));
            out.push(',');
            out.push_str(&n.to_string());
            out.push(',');
            out.push_str(&fmt_f64(c.re));
            out.push(',');
            out.push_str(&fmt_f64(c.im));
            out.push('\n');
        }
    }
    fs::write(path, out)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn write_diagnostics_csv(path: &Path, records: &[DiagnosticsRecord]) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str(DIAGNOSTICS_HEADER);
    out.push('\n');
    for r in records {
        let fields = [
            r.t,
            r.h_norm,
            r.e1,
            r.constraint_residual,
            r.zero_mean_residual_physical,
            r.ux_l2_spectral,
            r.ux_l2_physical,
        ];
        let row: Vec<String> = fields.iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

/// Streams `(x, u, u_x)` rows to any writer (stdout for the field command).
pub fn write_field_csv(
    mut out: impl Write,
    xs: &[f64],
    u: &[f64],
    ux: &[f64],
) -> Result<(), CliError> {
    // A closed pipe (e.g. `ripple field | head`) is the consumer's choice,
    // not an error.
    let io = |e: std::io::Error| match e.kind() {
        std::io::ErrorKind::BrokenPipe => Ok(()),
        _ => Err(CliError::usage(format!("cannot write field CSV: {e}"))),
    };
    if let Err(e) = writeln!(out, "{FIELD_HEADER}") {
        return io(e);
    }
    for ((x, u), ux) in xs.iter().zip(u).zip(ux) {
        if let Err(e) = writeln!(out, "{},{},{}", fmt_f64(*x), fmt_f64(*u), fmt_f64(*ux)) {
            return io(e);
        }
    }
    Ok(())
}

/// Reads a long-form trajectory CSV back, given the shape it was written
/// with.
pub fn read_trajectory_csv(
    path: &Path,
    period: f64,
    n_trunc: usize,
) -> Result<Trajectory, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read trajectory {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header != TRAJECTORY_HEADER {
        return Err(CliError::usage(format!(
            "unexpected trajectory header {header:?} in {}",
            path.display()
        )));
    }

    let bad = |msg: String| CliError::usage(format!("{}: {msg}", path.display()));
    let mut times: Vec<f64> = Vec::new();
    let mut states: Vec<ModeVector> = Vec::new();
    let mut coeffs: Vec<Complex64> = Vec::with_capacity(n_trunc + 1);
    for (lineno, line) in lines.enumerate() {
        let mut cols = line.split(',');
        let mut next = || {
            cols.next()
                .ok_or_else(|| bad(format!("short row at line {}", lineno + 2)))
        };
        let t: f64 = next()?
            .parse()
            .map_err(|e| bad(format!("bad t at line {}: {e}", lineno + 2)))?;
        let n: usize = next()?
            .parse()
            .map_err(|e| bad(format!("bad n at line {}: {e}", lineno + 2)))?;
        let re: f64 = next()?
            .parse()
            .map_err(|e| bad(format!("bad re at line {}: {e}", lineno + 2)))?;
        let im: f64 = next()?
            .parse()
            .map_err(|e| bad(format!("bad im at line {}: {e}", lineno + 2)))?;

        if n != coeffs.len() || n > n_trunc {
            return Err(bad(format!(
                "unexpected mode index {n} at line {}",
                lineno + 2
            )));
        }
        if n == 0 {
            times.push(t);
        }
        coeffs.push(Complex64::new(re, im));
        if n == n_trunc {
            let state =
                ModeVector::new(period, std::mem::take(&mut coeffs)).map_err(CliError::Math)?;
            states.push(state);
            coeffs = Vec::with_capacity(n_trunc + 1);
        }
    }
    if !coeffs.is_empty() {
        return Err(bad("truncated final sample".to_string()));
    }
    Trajectory::new(times, states).map_err(CliError::Math)
}

/// Pretty JSON with a trailing newline; `serde_json` maps are sorted, so the
/// bytes are deterministic.
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::usage(format!("cannot serialize report: {e}")))?;
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}
