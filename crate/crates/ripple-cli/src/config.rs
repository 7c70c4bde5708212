//! Run configuration: one flat JSON document per run, CLI flags override
//! file fields.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ripple::{BranchSign, ModeVector};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl From<Branch> for BranchSign {
    fn from(b: Branch) -> Self {
        match b {
            Branch::Plus => BranchSign::Plus,
            Branch::Minus => BranchSign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Picard,
    Rk4,
    Both,
}

/// Initial nonzero modes: an explicit `[n, re, im]` list or a preset name.
///
/// Presets: `equilibrium`, `single:<n>:<amp>`, `random:<count>:<amp>` (the
/// random preset draws re/im uniformly from `[-amp, amp]` for modes
/// `1..=count`, seeded by the `seed` field).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialSpec {
    Preset(String),
    Modes(Vec<(usize, f64, f64)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Spatial period.
    #[serde(default = "defaults::period")]
    pub l: f64,
    /// Truncation order.
    pub n: usize,
    #[serde(default = "defaults::branch")]
    pub branch: Branch,
    pub initial: InitialSpec,
    #[serde(default = "defaults::solver")]
    pub solver: Solver,
    /// Fixed-point horizon.
    #[serde(default = "defaults::horizon")]
    pub t: f64,
    /// Direct-integration horizon.
    #[serde(default = "defaults::t_final")]
    pub t_final: f64,
    /// Direct-integration step.
    #[serde(default = "defaults::dt")]
    pub dt: f64,
    /// Fixed-point grid intervals.
    #[serde(default = "defaults::intervals")]
    pub m: usize,
    #[serde(default = "defaults::tol")]
    pub tol: f64,
    #[serde(default = "defaults::max_iter")]
    pub max_iter: usize,
    #[serde(default = "defaults::conservation_tol")]
    pub conservation_tol: f64,
    /// Seed for the `random:` preset.
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

mod defaults {
    use super::{Branch, Solver};

    pub fn period() -> f64 {
        2.0 * std::f64::consts::PI
    }
    pub fn branch() -> Branch {
        Branch::Plus
    }
    pub fn solver() -> Solver {
        Solver::Both
    }
    pub fn horizon() -> f64 {
        0.1
    }
    pub fn t_final() -> f64 {
        1.0
    }
    pub fn dt() -> f64 {
        1e-3
    }
    pub fn intervals() -> usize {
        100
    }
    pub fn tol() -> f64 {
        1e-10
    }
    pub fn max_iter() -> usize {
        200
    }
    pub fn conservation_tol() -> f64 {
        1e-6
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.l.is_finite() && self.l > 0.0) {
            return Err(CliError::usage(format!(
                "period must be positive, got {}",
                self.l
            )));
        }
        if self.n == 0 {
            return Err(CliError::usage("truncation must be at least 1".to_string()));
        }
        if let InitialSpec::Modes(modes) = &self.initial {
            let mut seen = std::collections::HashSet::new();
            for &(n, re, im) in modes {
                if n == 0 || n > self.n {
                    return Err(CliError::usage(format!(
                        "initial mode index {n} outside 1..={}",
                        self.n
                    )));
                }
                if !seen.insert(n) {
                    return Err(CliError::usage(format!("duplicate initial mode index {n}")));
                }
                if !(re.is_finite() && im.is_finite()) {
                    return Err(CliError::usage(format!(
                        "non-finite initial value at mode {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds the configured nonzero modes (mean left at zero).
    pub fn initial_tail(&self) -> Result<ModeVector, CliError> {
        let modes: Vec<(usize, Complex64)> = match &self.initial {
            InitialSpec::Modes(list) => list
                .iter()
                .map(|&(n, re, im)| (n, Complex64::new(re, im)))
                .collect(),
            InitialSpec::Preset(name) => self.preset_modes(name)?,
        };
        ModeVector::from_modes(self.l, self.n, &modes).map_err(CliError::Math)
    }

    fn preset_modes(&self, name: &str) -> Result<Vec<(usize, Complex64)>, CliError> {
        let parts: Vec<&str> = name.split(':').collect();
        match parts.as_slice() {
            ["equilibrium"] => Ok(Vec::new()),
            ["single", n, amp] => {
                let n: usize = n
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad mode index in preset {name:?}")))?;
                let amp: f64 = amp
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad amplitude in preset {name:?}")))?;
                Ok(vec![(n, Complex64::new(amp, 0.0))])
            }
            ["random", count, amp] => {
                let count: usize = count
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad mode count in preset {name:?}")))?;
                let amp: f64 = amp
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad amplitude in preset {name:?}")))?;
                if count == 0 || count > self.n {
                    return Err(CliError::usage(format!(
                        "random preset count {count} outside 1..={}",
                        self.n
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                Ok((1..=count)
                    .map(|n| {
                        let re = rng.gen_range(-amp..=amp);
                        let im = rng.gen_range(-amp..=amp);
                        (n, Complex64::new(re, im))
                    })
                    .collect())
            }
            _ => Err(CliError::usage(format!(
                "unknown preset {name:?} (expected equilibrium, single:<n>:<amp> or random:<count>:<amp>)"
            ))),
        }
    }

    /// Admissible initial state: gate check plus zero-mode fill.
    pub fn initial_state(&self) -> Result<ModeVector, CliError> {
        let tail = self.initial_tail()?;
        ripple::build_initial(&tail, self.branch.into()).map_err(CliError::Math)
    }
}
