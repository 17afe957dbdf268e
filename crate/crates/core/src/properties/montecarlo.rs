//! Monte Carlo estimates around property counts: the limiting constant μ,
//! the Palm identity and the normalized count ratio along a radius law.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{bail_arg, bail_config, Result};
use crate::geometry::{
    ball_volume, sample_binomial, sample_poisson, uniform_in_ball, Density, PointCloud,
};
use crate::rng::{self, Rng};
use crate::stats::MeanSe;

use super::count::subset_count;
use super::descriptor::{PropertyDescriptor, SubsetPropertyDescriptor};

/// Statistical agreement threshold in standard errors.
pub const AGREEMENT_SIGMAS: f64 = 3.0;

const CHUNK: usize = 4096;

/// Radius law r_n = c·n^q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusLaw {
    pub c: f64,
    pub q: f64,
}

impl RadiusLaw {
    pub fn new(c: f64, q: f64) -> Self {
        Self { c, q }
    }

    pub fn radius(&self, n: f64) -> f64 {
        self.c * n.powf(self.q)
    }

    /// r_n^d·n → 0, i.e. q < −1/d.
    pub fn is_subcritical(&self, d: usize) -> bool {
        self.q < -1.0 / d as f64
    }

    pub fn check_subcritical(&self, d: usize) -> Result<()> {
        if !self.c.is_finite() || self.c < 0.0 || !self.q.is_finite() {
            bail_config!(
                "radius law needs finite c ≥ 0 and finite q, got c={} q={}",
                self.c,
                self.q
            );
        }
        if !self.is_subcritical(d) {
            bail_config!(
                "radius law q={} is not subcritical in dimension {d} (need q < {})",
                self.q,
                -1.0 / d as f64
            );
        }
        Ok(())
    }
}

fn factorial(p: usize) -> f64 {
    (1..=p).map(|i| i as f64).product()
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Runs `samples` draws of `draw` in parallel chunks, each chunk on its own
/// stream, and summarises them.
fn chunked_mean(seed: u64, samples: usize, draw: impl Fn(&mut Rng) -> f64 + Sync) -> MeanSe {
    let chunks = samples.div_ceil(CHUNK);
    let values: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = rng::stream(seed, &[c as u64]);
            let len = CHUNK.min(samples - c * CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect::<Vec<_>>()
        })
        .collect();
    MeanSe::of(&values)
}

/// Estimates μ = (1/p!) ∫ f^p · ∫ g_{1,p}({0, x_1, …, x_{p−1}}) dx.
///
/// The density integral is sampled as E_f[f^{p−1}]; the configuration
/// integral is sampled uniformly over the product of balls of radius `C·p`
/// about the origin, outside of which the integrand vanishes by locality.
pub fn estimate_mu(
    g: &PropertyDescriptor,
    f: &Density,
    samples: usize,
    rng: &mut Rng,
) -> Result<Estimate> {
    if samples == 0 {
        bail_arg!("estimate_mu needs at least one sample");
    }
    let g = g.at_scale(1.0)?;
    let p = g.arity();
    let d = f.dim();
    let seed = rng::fork_seed(rng);

    let outer = if p == 1 {
        MeanSe {
            mean: 1.0,
            se: 0.0,
            count: samples,
        }
    } else {
        chunked_mean(seed, samples, |rng| {
            let x = sample_binomial(1, f, rng).expect("density validated");
            f.eval(x.point(0)).powi(p as i32 - 1)
        })
    };

    let radius = g.diam_factor() * p as f64;
    let volume = ball_volume(d, radius).powi(p as i32 - 1);
    let inner_seed = seed ^ 0x5eed_1a1e;
    let inner = chunked_mean(inner_seed, samples, |rng| {
        let mut coords = vec![0.0; p * d];
        for i in 1..p {
            uniform_in_ball(d, radius, rng, &mut coords[i * d..(i + 1) * d]);
        }
        let y = PointCloud::from_flat(d, coords).expect("finite");
        if g.eval(&y) {
            volume
        } else {
            0.0
        }
    });

    let norm = factorial(p);
    let estimate = outer.mean * inner.mean / norm;
    let std_error =
        ((outer.mean * inner.se).powi(2) + (inner.mean * outer.se).powi(2)).sqrt() / norm;
    Ok(Estimate {
        estimate,
        std_error,
    })
}

/// Both sides of the Palm identity
/// E Σ_{Y ⊆ P_n} h(Y, P_n) = (n^p/p!) E h(X_p, X_p ∪ P_n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PalmCheck {
    pub lhs: MeanSe,
    pub rhs: MeanSe,
}

impl PalmCheck {
    /// The two sides agree if their `AGREEMENT_SIGMAS`-intervals overlap.
    pub fn agree(&self) -> bool {
        self.lhs.overlaps(&self.rhs, AGREEMENT_SIGMAS)
    }

    /// A copy with the right-hand side multiplied by `factor` (used as a
    /// negative control for the checker).
    pub fn with_rhs_scaled(&self, factor: f64) -> PalmCheck {
        let rhs = MeanSe {
            mean: self.rhs.mean * factor,
            se: self.rhs.se * factor.abs(),
            count: self.rhs.count,
        };
        PalmCheck { lhs: self.lhs, rhs }
    }
}

pub fn palm_check(
    h: &SubsetPropertyDescriptor,
    n: f64,
    f: &Density,
    trials: usize,
    rng: &mut Rng,
) -> Result<PalmCheck> {
    if trials == 0 {
        bail_arg!("palm_check needs at least one trial");
    }
    let p = h.arity();
    let weight = n.powi(p as i32) / factorial(p);
    if !weight.is_finite() {
        bail_arg!("n^p/p! is not representable for n={n}, p={p}");
    }
    let seed = rng::fork_seed(rng);
    let lhs: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::stream(seed, &[0, t as u64]);
            let cloud = sample_poisson(n, f, &mut rng)?;
            Ok(subset_count(h, &cloud) as f64)
        })
        .collect();
    let rhs: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::stream(seed, &[1, t as u64]);
            let fixed = sample_binomial(p, f, &mut rng)?;
            let background = sample_poisson(n, f, &mut rng)?;
            let x = fixed.concat(&background)?;
            let y: Vec<usize> = (0..p).collect();
            Ok(if h.eval(&y, &x) { weight } else { 0.0 })
        })
        .collect();
    Ok(PalmCheck {
        lhs: MeanSe::of(&lhs?),
        rhs: MeanSe::of(&rhs?),
    })
}

/// One row of a convergence diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticRow {
    pub n: f64,
    pub r: f64,
    pub count: MeanSe,
    /// E[count] / (n (r^d n)^{p−1}).
    pub ratio: f64,
    pub ratio_se: f64,
}

/// Mean normalized (subset) counts over Poisson clouds along a subcritical
/// radius law. Plain properties go through [`SubsetPropertyDescriptor::plain`].
pub fn convergence_diagnostic(
    h: &SubsetPropertyDescriptor,
    law: RadiusLaw,
    f: &Density,
    n_grid: &[f64],
    trials: usize,
    rng: &mut Rng,
) -> Result<Vec<DiagnosticRow>> {
    let d = f.dim();
    law.check_subcritical(d)?;
    if trials == 0 {
        bail_arg!("convergence_diagnostic needs at least one trial");
    }
    if law.c <= 0.0 {
        bail_config!("convergence_diagnostic needs c > 0");
    }
    let seed = rng::fork_seed(rng);
    let p = h.arity() as i32;
    let mut rows = Vec::with_capacity(n_grid.len());
    for (ni, &n) in n_grid.iter().enumerate() {
        let r = law.radius(n);
        let h_n = h.at_scale(r)?;
        let counts: Result<Vec<f64>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = rng::stream(seed, &[ni as u64, t as u64]);
                let cloud = sample_poisson(n, f, &mut rng)?;
                Ok(subset_count(&h_n, &cloud) as f64)
            })
            .collect();
        let count = MeanSe::of(&counts?);
        let norm = n * (r.powi(d as i32) * n).powi(p - 1);
        rows.push(DiagnosticRow {
            n,
            r,
            count,
            ratio: count.mean / norm,
            ratio_se: count.se / norm,
        });
    }
    Ok(rows)
}

/// CSV with header `n,r,count_mean,count_se,ratio,ratio_se`.
pub fn diagnostic_csv(rows: &[DiagnosticRow]) -> String {
    let mut s = String::from("n,r,count_mean,count_se,ratio,ratio_se\n");
    for row in rows {
        writeln!(
            s,
            "{},{},{},{},{},{}",
            row.n, row.r, row.count.mean, row.count.se, row.ratio, row.ratio_se
        )
        .unwrap();
    }
    s
}
