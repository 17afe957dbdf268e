use serde::{Deserialize, Serialize};

use crate::error::{bail_config, Error, Result};
use crate::geometry::Density;
use crate::persistence::FieldSpec;
use crate::properties::RadiusLaw;

/// Parameters of a Monte Carlo run of E β_k^θ(P_n, r_n).
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub d: usize,
    pub k: usize,
    pub theta: f64,
    /// Minimal support size of a θ-persistent k-cycle, when known.
    pub m: Option<usize>,
    pub density: Density,
    pub radius: RadiusLaw,
    pub n_grid: Vec<f64>,
    /// Trials per n, and the batch size when adaptive.
    pub trials: usize,
    /// Cap on trials per n when `target_rel_se` is set.
    pub max_trials: usize,
    pub target_rel_se: Option<f64>,
    pub seed: u64,
    pub field: FieldSpec,
}

/// On-disk form of [`ExperimentSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub d: usize,
    pub k: usize,
    pub theta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n_grid: Vec<f64>,
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_rel_se: Option<f64>,
    pub seed: u64,
    #[serde(default = "default_field")]
    pub field: u32,
    pub radius: RadiusConfig,
    pub density: BoxConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusConfig {
    pub c: f64,
    pub q: f64,
}

/// Uniform density on the box `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxConfig {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

fn default_field() -> u32 {
    2
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("experiment config serializes")
    }

    /// Validates and builds the runtime spec.
    pub fn to_spec(&self) -> Result<ExperimentSpec> {
        let field = FieldSpec::new(self.field).map_err(|e| Error::Config(e.to_string()))?;
        let density = Density::uniform_box(self.density.lo.clone(), self.density.hi.clone())?;
        let spec = ExperimentSpec {
            d: self.d,
            k: self.k,
            theta: self.theta,
            m: self.m,
            density,
            radius: RadiusLaw::new(self.radius.c, self.radius.q),
            n_grid: self.n_grid.clone(),
            trials: self.trials,
            max_trials: self.max_trials.unwrap_or(self.trials),
            target_rel_se: self.target_rel_se,
            seed: self.seed,
            field,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Reference setting of the `figure1` subcommand: d=2, θ=1.4, k=1, m=4, c=2.6, q=−2/3 on [−1,1]².
    pub fn figure1() -> Self {
        ExperimentConfig {
            d: 2,
            k: 1,
            theta: 1.4,
            m: Some(4),
            n_grid: vec![100.0, 1000.0, 10000.0],
            trials: 50,
            max_trials: None,
            target_rel_se: None,
            seed: 1,
            field: 2,
            radius: RadiusConfig {
                c: 2.6,
                q: -2.0 / 3.0,
            },
            density: BoxConfig {
                lo: vec![-1.0; 2],
                hi: vec![1.0; 2],
            },
        }
    }
}

impl ExperimentSpec {
    /// Checks the subcritical guard and the grid; runs before any sampling.
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            bail_config!("dimension must be positive");
        }
        if self.density.dim() != self.d {
            bail_config!(
                "density lives in R^{} but d = {}",
                self.density.dim(),
                self.d
            );
        }
        if !(self.theta >= 1.0) || !self.theta.is_finite() {
            bail_config!("theta must be finite and at least 1, got {}", self.theta);
        }
        if !(self.radius.c >= 0.0) || !self.radius.c.is_finite() {
            bail_config!(
                "radius constant c must be finite and non-negative, got {}",
                self.radius.c
            );
        }
        self.radius.check_subcritical(self.d)?;
        if self.n_grid.is_empty() {
            bail_config!("n_grid is empty");
        }
        if self.n_grid.iter().any(|&n| !(n > 0.0) || !n.is_finite()) {
            bail_config!("n_grid entries must be positive and finite");
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            bail_config!("n_grid must be strictly increasing");
        }
        if self.trials == 0 {
            bail_config!("trials must be positive");
        }
        if self.max_trials < self.trials {
            bail_config!(
                "max_trials ({}) is below trials ({})",
                self.max_trials,
                self.trials
            );
        }
        if let Some(t) = self.target_rel_se {
            if !(t > 0.0) {
                bail_config!("target_rel_se must be positive, got {t}");
            }
        }
        if let Some(m) = self.m {
            if m < self.k + 2 {
                bail_config!("m = {m} is below k + 2 = {}", self.k + 2);
            }
        }
        Ok(())
    }

    /// m if given, else k+2 when θ = 1.
    pub fn effective_m(&self) -> Option<usize> {
        self.m.or((self.theta == 1.0).then_some(self.k + 2))
    }

    /// 1 + (q·d + 1)(m − 1).
    pub fn predicted_exponent(&self) -> Option<f64> {
        self.effective_m()
            .map(|m| 1.0 + (self.radius.q * self.d as f64 + 1.0) * (m as f64 - 1.0))
    }
}
