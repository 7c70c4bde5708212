//! Algebraic resolution of the zero-mode constraint and admissible initial
//! data.
//!
//! Periodicity forces `\int_0^L (u - 3 u^2) dx = 0`, which in mode space
//! reads `u_0 - 3 u_0^2 = 3 S0` with `S0 = sum_{n != 0} |u_n|^2`: the mean is
//! not evolved by a differential equation, it is pinned by the other modes.
//! The quadratic has the real roots
//!
//! `u_0 = (1 ± sqrt(1 - 36 S0)) / 6`,
//!
//! which exist only while `S0 <= 1/36`; the two signs are two distinct
//! problems (they produce waves travelling in opposite directions) and are
//! never mixed along one solve.
//!
//! Initial data must satisfy the stricter admissibility gate
//! `S2 = sum_{n != 0} n^2 |phi_n|^2 < 1/72` (strict), which leaves enough
//! slack for the fixed-point iterates to keep their square roots real.

use crate::mode_space::{ModeVector, TailEnergy};
use crate::{Error, Result};

/// Strict upper bound on `S2` for admissible initial data.
pub const S2_GATE: f64 = 1.0 / 72.0;

/// Fold of the zero-mode quadratic: no real root beyond `S0 = 1/36`.
pub const S0_FOLD: f64 = 1.0 / 36.0;

/// The sign choice in the quadratic resolution of the zero mode.
///
/// `Plus` is the default; `Minus` selects the branch with the smaller mean
/// (waves travelling the other way).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchSign {
    #[default]
    Plus,
    Minus,
}

impl std::fmt::Display for BranchSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BranchSign::Plus => "plus",
            BranchSign::Minus => "minus",
        })
    }
}

/// Gates and residuals of a state against the admissibility hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport {
    pub s2: f64,
    pub s0: f64,
    /// `S2 < 1/72`, strict. Implies `gate_36`.
    pub gate_72: bool,
    /// `S0 <= 1/36` (the zero mode is resolvable).
    pub gate_36: bool,
    /// Spectral form of the zero-mean relation: `|u_0 - 3 u_0^2 - 3 S0|`.
    pub zero_mean_residual: f64,
}

/// Selected real root of `u0 - 3 u0^2 = 3 S0`.
///
/// The plus branch is evaluated directly; the minus branch uses the
/// rationalized form `6 S0 / (1 + sqrt(1 - 36 S0))` (the product of the two
/// roots is `S0`), which avoids cancellation for small `S0` and stays exact
/// at the fold.
///
/// ```
/// use ripple::{solve_zero_mode, BranchSign};
///
/// assert_eq!(solve_zero_mode(0.0, BranchSign::Plus)?, 1.0 / 3.0);
/// assert_eq!(solve_zero_mode(0.0, BranchSign::Minus)?, 0.0);
/// # Ok::<(), ripple::Error>(())
/// ```
pub fn solve_zero_mode(s0: f64, branch: BranchSign) -> Result<f64> {
    debug_assert!(s0 >= 0.0, "S0 is a sum of squares");
    let disc = 1.0 - 36.0 * s0;
    if disc < 0.0 {
        return Err(Error::NoRealRoot { s0, at: None });
    }
    let root = disc.sqrt();
    Ok(match branch {
        BranchSign::Plus => (1.0 + root) / 6.0,
        BranchSign::Minus => 6.0 * s0 / (1.0 + root),
    })
}

/// Gates and residuals of a state. Infallible: the report records whether
/// the gates hold, it does not enforce them.
pub fn admissibility(v: &ModeVector) -> AdmissibilityReport {
    let TailEnergy { s2, s0 } = v.tail_energy();
    let u0 = v.mean();
    AdmissibilityReport {
        s2,
        s0,
        gate_72: s2 < S2_GATE,
        gate_36: s0 <= S0_FOLD,
        zero_mean_residual: (u0 - 3.0 * u0 * u0 - 3.0 * s0).abs(),
    }
}

/// Builds admissible initial data from prescribed nonzero modes: checks the
/// strict gate `S2 < 1/72`, then fills in the mean from the selected branch.
/// The zero mode of `nonzero_modes` is ignored.
///
/// `S0 > 1/36` cannot be reached once the gate holds (`S0 <= S2 < 1/72`), so
/// the inner root solve is asserted rather than handled.
pub fn build_initial(nonzero_modes: &ModeVector, branch: BranchSign) -> Result<ModeVector> {
    let te = nonzero_modes.tail_energy();
    if te.s2 < S2_GATE {
        let mean =
            solve_zero_mode(te.s0, branch).expect("S0 <= S2 < 1/72 < 1/36 leaves the root real");
        Ok(nonzero_modes.with_mean(mean))
    } else {
        Err(Error::GateViolation { s2: te.s2 })
    }
}
