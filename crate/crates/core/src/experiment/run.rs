use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{sample_poisson, PointCloud};
use crate::persistence::persistent_betti;
use crate::rng;
use crate::stats::MeanSe;

use super::fit::{fit_exponent, ExponentFit};
use super::spec::ExperimentSpec;

/// Statistics of β_k^θ at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    pub n: f64,
    pub r: f64,
    pub mean: f64,
    pub se: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    /// Absent when the grid does not support a fit (too few rows, a zero
    /// mean, or less than 1.5 decades).
    pub fit: Option<ExponentFit>,
    pub predicted: Option<f64>,
    pub seed: u64,
}

/// The Poisson cloud for trial `trial` at grid index `n_index`.
pub fn trial_cloud(spec: &ExperimentSpec, n_index: usize, trial: usize) -> Result<PointCloud> {
    let mut rng = rng::stream(spec.seed, &[n_index as u64, trial as u64]);
    sample_poisson(spec.n_grid[n_index], &spec.density, &mut rng)
}

fn trial_betti(spec: &ExperimentSpec, n_index: usize, trial: usize, r: f64) -> Result<f64> {
    let cloud = trial_cloud(spec, n_index, trial)?;
    Ok(persistent_betti(&cloud, r, spec.theta, spec.k, spec.field)? as f64)
}

/// Runs `spec`: for each n, draws Poisson clouds and records the mean and
/// standard error of β_k^θ(P_n, r_n). With a target relative standard error,
/// batches of `trials` are added until the target or `max_trials` is reached.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.n_grid.len());
    for (i, &n) in spec.n_grid.iter().enumerate() {
        let r = spec.radius.radius(n);
        let mut values: Vec<f64> = Vec::new();
        loop {
            let start = values.len();
            let end = (start + spec.trials).min(spec.max_trials.max(spec.trials));
            let batch: Result<Vec<f64>> = (start..end)
                .into_par_iter()
                .map(|t| trial_betti(spec, i, t, r))
                .collect();
            values.extend(batch?);
            let stats = MeanSe::of(&values);
            let done = match spec.target_rel_se {
                None => true,
                Some(target) => stats.rel_se() < target || values.len() >= spec.max_trials,
            };
            if done {
                break;
            }
        }
        let stats = MeanSe::of(&values);
        log::info!(
            "n={n} r={r} mean={} se={} trials={}",
            stats.mean,
            stats.se,
            values.len()
        );
        rows.push(ResultRow {
            n,
            r,
            mean: stats.mean,
            se: stats.se,
            trials: values.len(),
        });
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|row| (row.n, row.mean)).collect();
    let fit = match fit_exponent(&points) {
        Ok(fit) => Some(fit),
        Err(e) => {
            log::info!("no exponent fit: {e}");
            None
        }
    };
    Ok(ExperimentResult {
        rows,
        fit,
        predicted: spec.predicted_exponent(),
        seed: spec.seed,
    })
}

impl ExperimentResult {
    /// `n,r,mean_betti,se,trials`
    pub fn results_csv(&self) -> String {
        let mut s = String::from("n,r,mean_betti,se,trials\n");
        for row in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{}",
                row.n, row.r, row.mean, row.se, row.trials
            )
            .unwrap();
        }
        s
    }

    /// `slope,ci_lo,ci_hi,predicted`; missing values are left empty.
    pub fn fit_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "slope,ci_lo,ci_hi,predicted\n{},{},{},{}\n",
            opt(self.fit.map(|f| f.slope)),
            opt(self.fit.map(|f| f.ci_lo)),
            opt(self.fit.map(|f| f.ci_hi)),
            opt(self.predicted)
        )
    }

    /// max mean / min mean over the grid; infinite if some mean is zero.
    pub fn band_factor(&self) -> f64 {
        let (lo, hi) = self
            .rows
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), row| {
                (lo.min(row.mean), hi.max(row.mean))
            });
        if lo > 0.0 {
            hi / lo
        } else {
            f64::INFINITY
        }
    }
}
