//! The contraction operator on trajectories and its fixed point.
//!
//! The mode system in integral form defines an operator `f` on time-sampled
//! trajectories: for `n != 0`
//!
//! `f_n(v)(t) = phi_n - (i L / (2 pi n)) \int_0^t (v_n(s) - 3 (v * v)_n(s)) ds`,
//!
//! and the zero mode of the image is resolved algebraically from the freshly
//! mapped tail,
//!
//! `f_0(v)(t) = (1 ± sqrt(1 - 36 sum_{n != 0} |f_n(v)(t)|^2)) / 6`.
//!
//! A trajectory solves the problem exactly when it is a fixed point of `f`.
//! For admissible data and a small enough horizon `f` contracts in the
//! sup-in-time H-norm, so iterating from the constant trajectory
//! `Phi(t) = phi` converges geometrically; the iteration records the update
//! norms so the contraction factor can be observed rather than assumed. The
//! squared-norm update ratios scale like `T^2`, which is what
//! [`solve_adaptive`] exploits: when the iteration fails to settle or a
//! square root turns imaginary, the horizon is halved and the solve retried.
//!
//! The time integral is a cumulative composite trapezoid on the uniform
//! grid, so converged trajectories carry an `O(dt^2)` quadrature bias that
//! refinement tests can measure.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::kahan::KahanSum;
use crate::mode_space::ModeVector;
use crate::trajectory::Trajectory;
use crate::zero_mode::{self, BranchSign};
use crate::{Error, Result};

/// Parameters of a fixed-point solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardConfig {
    /// Horizon `T` of the time grid.
    pub horizon: f64,
    /// Number of grid intervals `M` (`M + 1` samples).
    pub intervals: usize,
    /// Convergence tolerance on the sup-in-time H-norm of an update.
    pub tol: f64,
    /// Iteration cap before declaring failure.
    pub max_iter: usize,
    /// Zero-mode branch used by the operator.
    pub branch: BranchSign,
    /// Horizon halvings [`solve_adaptive`] may spend before giving up.
    pub max_halvings: usize,
}

impl PicardConfig {
    pub fn new(horizon: f64, intervals: usize) -> Self {
        Self {
            horizon,
            intervals,
            tol: 1e-10,
            max_iter: 200,
            branch: BranchSign::default(),
            max_halvings: 20,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if self.intervals == 0 {
            return Err(Error::InvalidConfig(
                "need at least one time interval".into(),
            ));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Convergence record of a fixed-point solve.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    /// Applications of the operator performed.
    pub iterations: usize,
    /// Sup-in-time H-norm of the last update.
    pub final_update_norm: f64,
    /// Successive squared update-norm ratios
    /// `(|u^{k+2} - u^{k+1}| / |u^{k+1} - u^k|)^2`; the squared form is the
    /// quantity whose small-horizon scaling is `T^2`.
    pub contraction_ratios: Vec<f64>,
    /// Sup-in-time H-norm of `u - f(u)` for the returned trajectory.
    pub integral_residual: f64,
    pub converged: bool,
}

/// A fixed-point solve together with the horizon that was finally accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub trajectory: Trajectory,
    pub report: FixedPointReport,
    /// Accepted horizon after any halvings.
    pub horizon: f64,
    /// Number of halvings spent.
    pub halvings: usize,
}

/// One application of the operator `f` to a trajectory.
///
/// The integrand `v - 3 (v * v)` is evaluated per sample (samples are
/// independent, so this part runs in parallel), accumulated by cumulative
/// trapezoid, and the zero mode of the image is resolved per sample from the
/// freshly mapped tail. Fails with [`Error::NoRealRoot`] carrying the first
/// offending sample time when that tail leaves `S0 <= 1/36` — the signal
/// that the horizon is too long for this datum.
pub fn picard_apply(v: &Trajectory, phi: &ModeVector, branch: BranchSign) -> Result<Trajectory> {
    let first = v.state(0);
    if first.n_trunc() != phi.n_trunc() || first.period() != phi.period() {
        return Err(Error::DimensionMismatch {
            n_left: phi.n_trunc(),
            l_left: phi.period(),
            n_right: first.n_trunc(),
            l_right: first.period(),
        });
    }
    let n_trunc = phi.n_trunc();
    let period = phi.period();
    let samples = v.num_samples();
    let dt = v.dt();

    let integrands: Vec<ModeVector> = v
        .states()
        .par_iter()
        .map(|s| {
            let conv = s.convolve(s).expect("trajectory states share one shape");
            s - &conv.scale(3.0)
        })
        .collect();

    let mut integral = vec![Complex64::ZERO; n_trunc + 1];
    let mut out = Vec::with_capacity(samples);
    for j in 0..samples {
        if j > 0 {
            let prev = integrands[j - 1].coeffs();
            let cur = integrands[j].coeffs();
            let half_dt = 0.5 * dt;
            for n in 1..=n_trunc {
                integral[n] += (prev[n] + cur[n]) * half_dt;
            }
        }
        let mut coeffs = vec![Complex64::ZERO; n_trunc + 1];
        let mut tail = KahanSum::new();
        for n in 1..=n_trunc {
            let factor = Complex64::new(0.0, -period / (2.0 * PI * n as f64));
            let c = phi.coeffs()[n] + factor * integral[n];
            tail.add(c.norm_sqr());
            coeffs[n] = c;
        }
        let s0 = 2.0 * tail.value();
        let mean = zero_mode::solve_zero_mode(s0, branch).map_err(|e| match e {
            Error::NoRealRoot { s0, .. } => Error::NoRealRoot {
                s0,
                at: Some(v.times()[j]),
            },
            other => other,
        })?;
        coeffs[0] = Complex64::new(mean, 0.0);
        out.push(ModeVector::assemble(period, coeffs));
    }
    Ok(Trajectory::from_parts(v.times().to_vec(), out))
}

/// Sup-in-time H-norm of `u - f(u)`: zero exactly when `u` is a fixed point
/// on this grid and quadrature.
pub fn integral_residual(u: &Trajectory, phi: &ModeVector, branch: BranchSign) -> Result<f64> {
    let fu = picard_apply(u, phi, branch)?;
    u.sup_h_distance(&fu)
}

/// Iterates `u <- f(u)` from the constant trajectory `Phi` until the update
/// norm drops to `cfg.tol`.
///
/// Requires admissible data (`S2 < 1/72`). Fails with
/// [`Error::NotConverged`] when `cfg.max_iter` applications are spent, or
/// [`Error::NoRealRoot`] when an iterate leaves the solvable ball; both are
/// cues to shrink the horizon (see [`solve_adaptive`]).
pub fn fixed_point(phi: &ModeVector, cfg: &PicardConfig) -> Result<(Trajectory, FixedPointReport)> {
    cfg.validate()?;
    let adm = zero_mode::admissibility(phi);
    if !adm.gate_72 {
        return Err(Error::GateViolation { s2: adm.s2 });
    }

    let mut u = Trajectory::constant(phi, cfg.horizon, cfg.intervals)?;
    let mut update_norms: Vec<f64> = Vec::new();
    for iteration in 1..=cfg.max_iter {
        let next = picard_apply(&u, phi, cfg.branch)?;
        let update = u.sup_h_distance(&next).expect("same grid by construction");
        update_norms.push(update);
        u = next;
        if update <= cfg.tol {
            let integral_residual = integral_residual(&u, phi, cfg.branch)?;
            let contraction_ratios = update_norms
                .windows(2)
                .map(|w| (w[1] / w[0]) * (w[1] / w[0]))
                .collect();
            return Ok((
                u,
                FixedPointReport {
                    iterations: iteration,
                    final_update_norm: update,
                    contraction_ratios,
                    integral_residual,
                    converged: true,
                },
            ));
        }
    }
    Err(Error::NotConverged {
        iterations: cfg.max_iter,
        last_update: *update_norms.last().unwrap(),
    })
}

/// [`fixed_point`] with horizon adaptation: on [`Error::NotConverged`] or
/// [`Error::NoRealRoot`] the horizon is halved and the solve retried, up to
/// `cfg.max_halvings` times. The grid keeps `cfg.intervals` intervals, so
/// halving also refines the quadrature.
pub fn solve_adaptive(phi: &ModeVector, cfg: &PicardConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let mut horizon = cfg.horizon;
    let mut last_err = None;
    for halvings in 0..=cfg.max_halvings {
        let attempt = PicardConfig { horizon, ..*cfg };
        match fixed_point(phi, &attempt) {
            Ok((trajectory, report)) => {
                return Ok(SolveReport {
                    trajectory,
                    report,
                    horizon,
                    halvings,
                });
            }
            Err(e @ (Error::NotConverged { .. } | Error::NoRealRoot { .. })) => {
                last_err = Some(e);
                horizon *= 0.5;
            }
            Err(other) => return Err(other),
        }
    }
    Err(last_err.expect("at least one attempt was made"))
}

/// Largest ratio of H-distance to time spacing over adjacent samples: a
/// finite-difference estimate of the Lipschitz constant of `t -> u(t)`.
pub fn lipschitz_estimate(u: &Trajectory) -> f64 {
    let dt = u.dt();
    u.states()
        .windows(2)
        .map(|w| w[0].h_distance(&w[1]) / dt)
        .fold(0.0, f64::max)
}
