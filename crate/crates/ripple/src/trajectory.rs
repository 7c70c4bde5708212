//! Mode vectors sampled on a uniform time grid.

use crate::mode_space::ModeVector;
use crate::{Error, Result};

/// A mode vector per sample of the uniform grid `t_j = j T / M`,
/// `j = 0..=M`. This is the discrete stand-in for a curve
/// `t -> u(t)` in the weighted sequence space; sup-in-time norms are taken
/// as maxima over the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<ModeVector>,
}

impl Trajectory {
    /// Validating constructor: grid starts at 0, is uniform and increasing,
    /// and every state shares the first state's period and truncation.
    pub fn new(times: Vec<f64>, states: Vec<ModeVector>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::InvalidConfig(format!(
                "{} sample times for {} states",
                times.len(),
                states.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidConfig(
                "a trajectory needs at least two samples (M >= 1)".into(),
            ));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidConfig(format!(
                "time grid must start at 0, got {}",
                times[0]
            )));
        }
        let dt = times[1] - times[0];
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidConfig(format!("bad grid spacing {dt}")));
        }
        for (j, &t) in times.iter().enumerate() {
            let expected = j as f64 * dt;
            if (t - expected).abs() > 1e-9 * dt * (1.0 + j as f64) {
                return Err(Error::InvalidConfig(format!(
                    "non-uniform grid at sample {j}: {t} vs {expected}"
                )));
            }
        }
        let first = &states[0];
        for s in &states[1..] {
            if s.n_trunc() != first.n_trunc() || s.period() != first.period() {
                return Err(Error::DimensionMismatch {
                    n_left: first.n_trunc(),
                    l_left: first.period(),
                    n_right: s.n_trunc(),
                    l_right: s.period(),
                });
            }
        }
        Ok(Self { times, states })
    }

    /// Internal constructor for grids built arithmetically as `j * dt`.
    pub(crate) fn from_parts(times: Vec<f64>, states: Vec<ModeVector>) -> Self {
        debug_assert_eq!(times.len(), states.len());
        debug_assert!(times.len() >= 2);
        Self { times, states }
    }

    /// Constant-in-time trajectory of one state over `[0, horizon]` with
    /// `intervals` uniform steps (the starting iterate of the fixed-point
    /// iteration).
    pub fn constant(state: &ModeVector, horizon: f64, intervals: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if intervals == 0 {
            return Err(Error::InvalidConfig(
                "need at least one time interval".into(),
            ));
        }
        let dt = horizon / intervals as f64;
        let times = (0..=intervals).map(|j| j as f64 * dt).collect();
        let states = vec![state.clone(); intervals + 1];
        Ok(Self { times, states })
    }

    pub fn num_samples(&self) -> usize {
        self.times.len()
    }

    pub fn num_intervals(&self) -> usize {
        self.times.len() - 1
    }

    pub fn dt(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[ModeVector] {
        &self.states
    }

    pub fn state(&self, j: usize) -> &ModeVector {
        &self.states[j]
    }

    /// Index of the sample closest to `t` (clamped to the grid).
    pub fn nearest_sample(&self, t: f64) -> usize {
        let j = (t / self.dt()).round();
        (j.max(0.0) as usize).min(self.num_samples() - 1)
    }

    /// Sup over shared samples of the H-distance between two trajectories on
    /// the same grid.
    pub fn sup_h_distance(&self, other: &Trajectory) -> Result<f64> {
        if self.num_samples() != other.num_samples() {
            return Err(Error::InvalidConfig(format!(
                "grids differ: {} vs {} samples",
                self.num_samples(),
                other.num_samples()
            )));
        }
        let tol = 1e-9 * self.dt().max(other.dt());
        for (a, b) in self.times.iter().zip(&other.times) {
            if (a - b).abs() > tol {
                return Err(Error::InvalidConfig(format!(
                    "grids differ: t = {a} vs {b}"
                )));
            }
        }
        let (a, b) = (self.state(0), other.state(0));
        if a.n_trunc() != b.n_trunc() || a.period() != b.period() {
            return Err(Error::DimensionMismatch {
                n_left: a.n_trunc(),
                l_left: a.period(),
                n_right: b.n_trunc(),
                l_right: b.period(),
            });
        }
        Ok(self
            .states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| a.h_distance(b))
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state() -> ModeVector {
        ModeVector::zeros(1.0, 2).unwrap()
    }

    #[test]
    fn constant_trajectory_has_uniform_grid() {
        let t = Trajectory::constant(&state(), 0.5, 5).unwrap();
        assert_eq!(t.num_samples(), 6);
        assert_eq!(t.num_intervals(), 5);
        assert_eq!(t.dt(), 0.1);
        assert_eq!(t.horizon(), 0.5);
        assert_eq!(t.nearest_sample(0.0), 0);
        assert_eq!(t.nearest_sample(0.26), 3);
        assert_eq!(t.nearest_sample(9.0), 5);
    }

    #[test]
    fn new_rejects_bad_grids() {
        let s = state();
        assert!(Trajectory::new(vec![0.0], vec![s.clone()]).is_err());
        assert!(Trajectory::new(vec![0.1, 0.2], vec![s.clone(), s.clone()]).is_err());
        assert!(
            Trajectory::new(vec![0.0, 0.1, 0.3], vec![s.clone(), s.clone(), s.clone()]).is_err()
        );
        assert!(Trajectory::new(vec![0.0, 0.1], vec![s.clone()]).is_err());
        let other = ModeVector::zeros(1.0, 3).unwrap();
        assert!(Trajectory::new(vec![0.0, 0.1], vec![s, other]).is_err());
    }

    #[test]
    fn sup_distance_requires_matching_grids() {
        let a = Trajectory::constant(&state(), 1.0, 4).unwrap();
        let b = Trajectory::constant(&state(), 1.0, 5).unwrap();
        assert!(a.sup_h_distance(&b).is_err());
        let c = Trajectory::constant(&state(), 1.0, 4).unwrap();
        assert_eq!(a.sup_h_distance(&c).unwrap(), 0.0);
    }
}
