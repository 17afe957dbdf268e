//! Binomial and Poisson point processes.

use rand::Rng as _;
use rand_distr::{Distribution, Poisson};

use crate::error::{bail_arg, bail_config, Result};
use crate::rng::Rng;

use super::density::Density;
use super::point_cloud::PointCloud;

/// Upper limit on rejection proposals per accepted point before the density
/// is declared unusable (e.g. identically zero).
const MAX_REJECTIONS: usize = 1_000_000;

fn draw_point(f: &Density, rng: &mut Rng, out: &mut Vec<f64>) -> Result<()> {
    let (lo, hi) = f.bounds();
    let start = out.len();
    match f {
        Density::UniformBox { .. } => {
            for (a, b) in lo.iter().zip(hi) {
                out.push(a + (b - a) * rng.random::<f64>());
            }
            Ok(())
        }
        Density::Custom { bound, .. } => {
            for _ in 0..MAX_REJECTIONS {
                out.truncate(start);
                for (a, b) in lo.iter().zip(hi) {
                    out.push(a + (b - a) * rng.random::<f64>());
                }
                let value = f.eval(&out[start..]);
                if !(value >= 0.0) || value > *bound {
                    bail_config!(
                        "density value {value} at {:?} outside [0, {bound}]",
                        &out[start..]
                    );
                }
                if rng.random::<f64>() * bound < value {
                    return Ok(());
                }
            }
            out.truncate(start);
            bail_config!("rejection sampler accepted nothing in {MAX_REJECTIONS} proposals")
        }
    }
}

/// Binomial process: exactly `n` i.i.d. points with density `f`.
pub fn sample_binomial(n: usize, f: &Density, rng: &mut Rng) -> Result<PointCloud> {
    let mut coords = Vec::with_capacity(n * f.dim());
    for _ in 0..n {
        draw_point(f, rng, &mut coords)?;
    }
    PointCloud::from_flat(f.dim(), coords)
}

/// Poisson process with intensity `n·f`: a Poisson(n) number of i.i.d.
/// points with density `f`.
pub fn sample_poisson(n: f64, f: &Density, rng: &mut Rng) -> Result<PointCloud> {
    if !(n > 0.0 && n.is_finite()) {
        bail_arg!("Poisson intensity must be positive and finite, got {n}");
    }
    let count = Poisson::new(n)
        .map_err(|e| crate::Error::Argument(format!("Poisson({n}): {e}")))?
        .sample(rng) as usize;
    sample_binomial(count, f, rng)
}

/// Uniform sample from the closed ball of radius `radius` about the origin.
pub(crate) fn uniform_in_ball(dim: usize, radius: f64, rng: &mut Rng, out: &mut [f64]) {
    let normal = rand_distr::StandardNormal;
    loop {
        let mut norm2 = 0.0;
        for x in out.iter_mut() {
            *x = normal.sample(rng);
            norm2 += *x * *x;
        }
        if norm2 > 0.0 {
            let scale = radius * rng.random::<f64>().powf(1.0 / dim as f64) / norm2.sqrt();
            out.iter_mut().for_each(|x| *x *= scale);
            return;
        }
    }
}

/// Volume of the d-dimensional ball of radius `radius`.
pub fn ball_volume(dim: usize, radius: f64) -> f64 {
    // V_d = pi^{d/2} / Gamma(d/2 + 1)
    let d = dim as f64;
    std::f64::consts::PI.powf(d / 2.0) / statrs::function::gamma::gamma(d / 2.0 + 1.0)
        * radius.powi(dim as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn binomial_basics() {
        let f = Density::unit_cube(2).unwrap();
        let mut r = rng::root(1);
        assert!(sample_binomial(0, &f, &mut r).unwrap().is_empty());
        let p = sample_binomial(10_000, &f, &mut r).unwrap();
        assert_eq!(p.len(), 10_000);
        // mean coordinate within 3 sigma, sigma = sqrt(1/12 / n)
        let sigma = (1.0f64 / 12.0 / 10_000.0).sqrt();
        for axis in 0..2 {
            let mean = p.iter().map(|x| x[axis]).sum::<f64>() / 10_000.0;
            assert!((mean - 0.5).abs() < 3.0 * sigma, "axis {axis} mean {mean}");
        }
        // half-box occupancy, binomial(n, 1/2) within 3 sigma
        let left = p.iter().filter(|x| x[0] < 0.5).count() as f64;
        assert!((left - 5000.0).abs() < 3.0 * 50.0);
    }

    #[test]
    fn custom_density_rejection() {
        // f(x) = 2x on [0, 1], mean 2/3
        let f = Density::custom(vec![0.0], vec![1.0], 2.0, |x| 2.0 * x[0]).unwrap();
        let p = sample_binomial(20_000, &f, &mut rng::root(3)).unwrap();
        let mean = p.iter().map(|x| x[0]).sum::<f64>() / 20_000.0;
        let sigma = (1.0f64 / 18.0 / 20_000.0).sqrt();
        assert!((mean - 2.0 / 3.0).abs() < 4.0 * sigma);

        let lying = Density::custom(vec![0.0], vec![1.0], 1.0, |x| 2.0 * x[0]).unwrap();
        assert!(sample_binomial(100, &lying, &mut rng::root(3)).is_err());
        assert!(Density::custom(vec![0.0], vec![1.0], f64::INFINITY, |_| 1.0).is_err());
        let zero = Density::custom(vec![0.0], vec![1.0], 1.0, |_| 0.0).unwrap();
        assert!(sample_binomial(1, &zero, &mut rng::root(3)).is_err());
    }

    #[test]
    fn poisson_rejects_bad_intensity() {
        let f = Density::unit_cube(2).unwrap();
        assert!(sample_poisson(0.0, &f, &mut rng::root(0)).is_err());
        assert!(sample_poisson(-1.0, &f, &mut rng::root(0)).is_err());
    }

    #[test]
    fn ball_volumes() {
        assert!((ball_volume(2, 1.0) - std::f64::consts::PI).abs() < 1e-12);
        assert!((ball_volume(3, 2.0) - 4.0 / 3.0 * std::f64::consts::PI * 8.0).abs() < 1e-9);
        assert!((ball_volume(1, 1.5) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ball_sampler_stays_inside() {
        let mut r = rng::root(9);
        let mut x = [0.0; 3];
        for _ in 0..1000 {
            uniform_in_ball(3, 2.0, &mut r, &mut x);
            assert!(x.iter().map(|v| v * v).sum::<f64>() <= 4.0 + 1e-12);
        }
    }
}
