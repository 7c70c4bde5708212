//! Spectral solver and verification harness for the periodic Cauchy problem
//! of the short-wave equation
//!
//! `u_tx = u - 3 u^2`, `u(0, t) = u(L, t)`, `u(x, 0) = phi(x)`.
//!
//! In Fourier modes the equation splits into an ODE system for the nonzero
//! modes and an algebraic constraint pinning the mean, and a solution can be
//! reached two independent ways:
//!
//! * [`picard`] iterates the integral-form contraction operator on
//!   trajectories to a local-in-time fixed point, recording the observed
//!   contraction ratios;
//! * [`evolution`] integrates the mode ODEs directly with the constraint
//!   projected at every stage, continuing globally on the back of the
//!   conserved tail energy.
//!
//! [`mode_space`] supplies the Hermitian half-spectrum representation with
//! norms, convolution and synthesis; [`zero_mode`] owns the constraint
//! algebra and the admissibility gate `S2 < 1/72`; [`diagnostics`] watches
//! the conserved quantities that make the two routes comparable.
//!
//! ```
//! use num_complex::Complex64;
//! use ripple::{build_initial, BranchSign, EvolutionConfig, ModeVector};
//!
//! let tail = ModeVector::from_modes(
//!     2.0 * std::f64::consts::PI,
//!     16,
//!     &[(1, Complex64::new(0.05, 0.0))],
//! )?;
//! let phi = build_initial(&tail, BranchSign::Plus)?;
//! let (trajectory, records) = ripple::integrate(&phi, &EvolutionConfig::new(1e-3, 0.5))?;
//! let drift = ripple::drift_report(&records);
//! assert!(drift.max_e1_drift < 1e-9);
//! assert_eq!(trajectory.num_samples(), 501);
//! # Ok::<(), ripple::Error>(())
//! ```

pub mod diagnostics;
pub mod evolution;
pub mod mode_space;
pub mod picard;
pub mod zero_mode;

mod error;
mod kahan;
mod trajectory;

pub use diagnostics::{drift_report, record, DiagnosticsRecord, DriftSummary};
pub use error::Error;
pub use evolution::{integrate, rhs, step_rk4, EvolutionConfig};
pub use mode_space::{FieldSamples, ModeVector, TailEnergy};
pub use picard::{
    fixed_point, integral_residual, lipschitz_estimate, picard_apply, solve_adaptive,
    FixedPointReport, PicardConfig, SolveReport,
};
pub use trajectory::Trajectory;
pub use zero_mode::{
    admissibility, build_initial, solve_zero_mode, AdmissibilityReport, BranchSign, S0_FOLD,
    S2_GATE,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
