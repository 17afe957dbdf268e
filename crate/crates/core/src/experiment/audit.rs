use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{bail_config, Error, Result};
use crate::persistence::persistent_betti;
use crate::properties::{subset_count, SubsetPropertyDescriptor};

use super::run::trial_cloud;
use super::spec::ExperimentSpec;

/// One audited cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditRow {
    pub n: f64,
    pub r: f64,
    pub trial: usize,
    /// Number of separated minimal θ-persistent k-cycles.
    pub cycles: u64,
    pub betti: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub m: usize,
    pub rows: Vec<AuditRow>,
}

/// Checks, on every cloud of `spec`, that the number of separated m-point
/// θ-persistent k-cycles is at most β_k^θ. The first violation aborts with
/// the offending cloud attached.
pub fn lower_bound_audit(spec: &ExperimentSpec) -> Result<AuditReport> {
    spec.validate()?;
    let Some(m) = spec.effective_m() else {
        bail_config!("lower-bound audit needs m (known only for theta = 1 without a bracket)");
    };
    let mut rows = Vec::new();
    for (i, &n) in spec.n_grid.iter().enumerate() {
        let r = spec.radius.radius(n);
        if r == 0.0 {
            rows.extend((0..spec.trials).map(|trial| AuditRow {
                n,
                r,
                trial,
                cycles: 0,
                betti: 0,
            }));
            continue;
        }
        let upsilon = SubsetPropertyDescriptor::upsilon(r, m, spec.theta, spec.k)?;
        let batch: Result<Vec<AuditRow>> = (0..spec.trials)
            .into_par_iter()
            .map(|trial| {
                let cloud = trial_cloud(spec, i, trial)?;
                let cycles = subset_count(&upsilon, &cloud);
                let betti = persistent_betti(&cloud, r, spec.theta, spec.k, spec.field)?;
                if cycles > betti as u64 {
                    return Err(Error::Audit(format!(
                        "separated cycle count {cycles} exceeds persistent Betti number {betti} \
                         (n={n}, r={r}, trial={trial}, seed={})\n{}",
                        spec.seed,
                        cloud.to_text()
                    )));
                }
                Ok(AuditRow {
                    n,
                    r,
                    trial,
                    cycles,
                    betti,
                })
            })
            .collect();
        rows.extend(batch?);
    }
    Ok(AuditReport { m, rows })
}

impl AuditReport {
    /// Per-n means of both counts and the number of trials where they agree.
    pub fn summary(&self) -> Vec<(f64, f64, f64, f64, usize)> {
        let mut out: Vec<(f64, f64, f64, f64, usize)> = Vec::new();
        for row in &self.rows {
            match out.last_mut() {
                Some(last) if last.0 == row.n => {
                    last.2 += row.cycles as f64;
                    last.3 += row.betti as f64;
                    last.4 += usize::from(row.cycles == row.betti as u64);
                }
                _ => out.push((
                    row.n,
                    row.r,
                    row.cycles as f64,
                    row.betti as f64,
                    usize::from(row.cycles == row.betti as u64),
                )),
            }
        }
        for entry in &mut out {
            let count = self.rows.iter().filter(|r| r.n == entry.0).count() as f64;
            entry.2 /= count;
            entry.3 /= count;
        }
        out
    }

    /// `n,r,mean_cycles,mean_betti,equal`
    pub fn summary_csv(&self) -> String {
        let mut s = String::from("n,r,mean_cycles,mean_betti,equal\n");
        for (n, r, c, b, eq) in self.summary() {
            writeln!(s, "{n},{r},{c},{b},{eq}").unwrap();
        }
        s
    }
}
