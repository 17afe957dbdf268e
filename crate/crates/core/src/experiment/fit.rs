use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{bail_arg, Result};

/// Least-squares slope of log mean against log n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Minimum span of the n grid, in decades.
pub const MIN_DECADES: f64 = 1.5;

/// Ordinary least squares on (log n, log mean) with a 95% t interval.
pub fn fit_exponent(rows: &[(f64, f64)]) -> Result<ExponentFit> {
    fit_exponent_with_span(rows, MIN_DECADES)
}

/// [`fit_exponent`] with a caller-chosen minimum span of the n grid.
pub fn fit_exponent_with_span(rows: &[(f64, f64)], min_decades: f64) -> Result<ExponentFit> {
    if rows.len() < 4 {
        bail_arg!("exponent fit needs at least 4 rows, got {}", rows.len());
    }
    if let Some(&(n, _)) = rows.iter().find(|&&(_, mean)| !(mean > 0.0)) {
        bail_arg!("mean is zero at n = {n}; increase trials or n before fitting");
    }
    if rows.iter().any(|&(n, _)| !(n > 0.0)) {
        bail_arg!("n values must be positive");
    }
    let (lo, hi) = rows
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(n, _)| {
            (lo.min(n), hi.max(n))
        });
    if (hi / lo).log10() < min_decades {
        bail_arg!(
            "n range spans {:.2} decades, need {min_decades}",
            (hi / lo).log10()
        );
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.0.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.1.ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let dof = len - 2.0;
    let se = (rss / dof / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, dof)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.975);
    Ok(ExponentFit {
        slope,
        intercept,
        ci_lo: slope - t * se,
        ci_hi: slope + t * se,
    })
}
