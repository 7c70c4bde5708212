use thiserror::Error;

/// Errors shared by all solver modules.
///
/// The first four variants are configuration or usage mistakes; the last four
/// are mathematical events: the admissibility gate, the zero-mode fold, a
/// stalled fixed-point iteration, and conserved-quantity drift beyond
/// tolerance.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two mode vectors disagree in truncation order or period.
    #[error("dimension mismatch: (N = {n_left}, L = {l_left}) vs (N = {n_right}, L = {l_right})")]
    DimensionMismatch {
        n_left: usize,
        l_left: f64,
        n_right: usize,
        l_right: f64,
    },

    /// A sampling grid is too coarse for the requested truncation (aliasing).
    #[error("grid too small: {points} points, need at least {min_points}")]
    GridTooSmall { points: usize, min_points: usize },

    /// Non-finite data, bad period, or malformed coefficient input.
    #[error("invalid mode data: {0}")]
    InvalidModeData(String),

    /// Invalid run parameters (grids, tolerances, horizons).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The zero-mode constraint `u0 - 3 u0^2 = 3 S0` has no real solution:
    /// `S0` exceeds 1/36, so the square root in the quadratic resolution
    /// turns imaginary. `at` carries the offending sample time when the
    /// breach happened along a trajectory.
    #[error("no real zero-mode root: S0 = {s0:e} exceeds 1/36{}", at.map(|t| format!(" at t = {t}")).unwrap_or_default())]
    NoRealRoot { s0: f64, at: Option<f64> },

    /// Initial data fails the admissibility gate `S2 < 1/72`.
    #[error("admissibility gate violated: S2 = {s2:e} is not strictly below 1/72")]
    GateViolation { s2: f64 },

    /// The fixed-point iteration did not reach the update tolerance.
    #[error(
        "fixed point not reached after {iterations} iterations (last update norm {last_update:e})"
    )]
    NotConverged { iterations: usize, last_update: f64 },

    /// Relative drift of the conserved tail energy exceeded the configured
    /// tolerance. This flags discretization error (step too large or
    /// truncation too small), not a property of the continuous dynamics.
    #[error("conserved tail energy drifted by {drift:e} (relative) at t = {t}, tolerance {tol:e}")]
    ConservationBreach { t: f64, drift: f64, tol: f64 },
}


impl Error {
    /// Stable category name, used by the command line's error JSON.
    pub fn category(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::GridTooSmall { .. } => "GridTooSmall",
            Error::InvalidModeData(_) => "InvalidModeData",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::NoRealRoot { .. } => "NoRealRoot",
            Error::GateViolation { .. } => "GateViolation",
            Error::NotConverged { .. } => "NotConverged",
            Error::ConservationBreach { .. } => "ConservationBreach",
        }
    }

    /// True for mathematical failures (admissibility, solvability,
    /// convergence, conservation); false for configuration or usage errors.
    pub fn is_math_failure(&self) -> bool {
        matches!(
            self,
            Error::NoRealRoot { .. }
                | Error::GateViolation { .. }
                | Error::NotConverged { .. }
                | Error::ConservationBreach { .. }
        )
    }
}
