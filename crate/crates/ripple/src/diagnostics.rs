//! Invariant monitors: one record per state ties the spectral invariants to
//! their physical-space counterparts.
//!
//! Two identities are watched. The zero-mean relation
//! `\int_0^L (u - 3 u^2) dx = 0` is the physical form of the algebraic
//! constraint `u_0 - 3 u_0^2 = 3 S0`; a record carries both residuals so a
//! broken state shows the same number in both bases. The squared derivative
//! norm `\int_0^L u_x^2 dx` equals `L (2 pi / L)^2 E1` with
//! `E1 = sum_{n != 0} n^2 |u_n|^2`; the spectral column is computed through
//! that identity while the physical column is quadrature on samples, so the
//! pair is a live cross-basis check.
//!
//! Quadrature is the uniform periodic trapezoid (the plain sample mean),
//! which is exact to rounding for trigonometric polynomials of degree below
//! the point count; the integrands have degree `2N`, hence the `4N+1`-point
//! floor.

use std::f64::consts::PI;

use crate::kahan;
use crate::mode_space::ModeVector;
use crate::{Error, Result};

/// Invariant values of one state at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// Weighted sequence norm of the state.
    pub h_norm: f64,
    /// Conserved tail energy `E1 = sum_{n != 0} n^2 |u_n|^2`.
    pub e1: f64,
    /// Spectral zero-mean residual `|u_0 - 3 u_0^2 - 3 S0|`.
    pub constraint_residual: f64,
    /// Physical zero-mean residual `|(1/L) \int_0^L (u - 3 u^2) dx|` by
    /// quadrature.
    pub zero_mean_residual_physical: f64,
    /// `\int_0^L u_x^2 dx` through the spectral identity
    /// `L (2 pi / L)^2 E1`.
    pub ux_l2_spectral: f64,
    /// `\int_0^L u_x^2 dx` by quadrature on synthesized samples.
    pub ux_l2_physical: f64,
}

/// Computes every invariant of a state. `quad_points >= 4N+1` keeps the
/// quadratic quadratures exact.
pub fn record(u: &ModeVector, t: f64, quad_points: usize) -> Result<DiagnosticsRecord> {
    let min_points = 4 * u.n_trunc() + 1;
    if quad_points < min_points {
        return Err(Error::GridTooSmall {
            points: quad_points,
            min_points,
        });
    }

    let te = u.tail_energy();
    let mean = u.mean();
    let constraint_residual = (mean - 3.0 * mean * mean - 3.0 * te.s0).abs();

    let field = u.synthesize(quad_points)?;
    let zero_mean_residual_physical =
        kahan::sum(field.values().iter().map(|v| v - 3.0 * v * v)).abs() / quad_points as f64;

    let period = u.period();
    let omega = 2.0 * PI / period;
    let ux_l2_spectral = period * omega * omega * te.s2;
    let deriv = u.synthesize_derivative(quad_points)?;
    let ux_l2_physical =
        kahan::sum(deriv.values().iter().map(|v| v * v)) / quad_points as f64 * period;

    Ok(DiagnosticsRecord {
        t,
        h_norm: u.h_norm(),
        e1: te.s2,
        constraint_residual,
        zero_mean_residual_physical,
        ux_l2_spectral,
        ux_l2_physical,
    })
}

/// Worst-case drifts and residuals over a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftSummary {
    /// Max `|E1(t) - E1(0)| / E1(0)` (absolute when `E1(0) = 0`).
    pub max_e1_drift: f64,
    pub max_constraint_residual: f64,
    pub max_zero_mean_residual: f64,
}

/// Reduces a record sequence to its worst drifts. The first record is the
/// conservation baseline.
pub fn drift_report(records: &[DiagnosticsRecord]) -> DriftSummary {
    assert!(records.len() >= 2, "drift needs at least two records");
    let e1_reference = records[0].e1;
    let mut summary = DriftSummary {
        max_e1_drift: 0.0,
        max_constraint_residual: 0.0,
        max_zero_mean_residual: 0.0,
    };
    for rec in records {
        let drift = if e1_reference > 0.0 {
            (rec.e1 - e1_reference).abs() / e1_reference
        } else {
            rec.e1.abs()
        };
        summary.max_e1_drift = summary.max_e1_drift.max(drift);
        summary.max_constraint_residual =
            summary.max_constraint_residual.max(rec.constraint_residual);
        summary.max_zero_mean_residual = summary
            .max_zero_mean_residual
            .max(rec.zero_mean_residual_physical);
    }
    summary
}
