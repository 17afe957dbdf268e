//! Point sets carrying θ-persistent k-cycles.
//!
//! `m(θ, k)` is the least number of points that can support a k-cycle
//! surviving from scale r to θr. This module builds explicit witnesses by
//! subdividing the boundary of a simplex, checks them under perturbation,
//! searches random configurations for small witnesses and evaluates the
//! combinatorial constant bounding the rank carried by p points.

mod subdivision;

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{bail_arg, Error, Result};
use crate::geometry::{dist, miniball, sample_binomial, uniform_in_ball, Density, PointCloud};
use crate::persistence::{cech_filtration, compute_persistence, persistent_betti, FieldSpec};
use crate::rng::{self, Rng};

use subdivision::Mesh;

/// Number of radii scanned per random configuration in [`search_m`].
pub const SEARCH_GRID: usize = 64;

/// Whether `y` forms a θ-persistent k-cycle at scale `r` (over Z/2).
pub fn zeta_indicator(y: &PointCloud, r: f64, theta: f64, k: usize) -> Result<bool> {
    Ok(persistent_betti(y, r, theta, k, FieldSpec::default())? >= 1)
}

/// A point set with a verified θ-persistent k-cycle at scale `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleWitness {
    pub points: PointCloud,
    pub r: f64,
    pub theta: f64,
    pub k: usize,
    /// Outer radius up to which the cycle is known to survive (≥ θr).
    pub outer_radius: f64,
    pub verified_rank: usize,
}

impl CycleWitness {
    /// Recomputes the persistent rank; errors if it is zero.
    pub fn verify(&self) -> Result<usize> {
        let rank = persistent_betti(
            &self.points,
            self.r,
            self.theta,
            self.k,
            FieldSpec::default(),
        )?;
        if rank == 0 {
            return Err(Error::Audit(format!(
                "witness with {} points has no {}-persistent {}-cycle at r={}",
                self.points.len(),
                self.theta,
                self.k,
                self.r
            )));
        }
        Ok(rank)
    }

    /// Text form: a `k theta r R rank` line followed by the point cloud.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{} {} {} {} {}",
            self.k, self.theta, self.r, self.outer_radius, self.verified_rank
        )
        .unwrap();
        s.push_str(&self.points.to_text());
        s
    }

    /// Parses [`CycleWitness::to_text`] output and re-verifies the cycle.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty witness file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [k, theta, r, outer, rank] = fields[..] else {
            return Err(Error::Parse(format!(
                "expected `k theta r R rank`, got {header:?}"
            )));
        };
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        let witness = CycleWitness {
            k: int(k)?,
            theta: num(theta)?,
            r: num(r)?,
            outer_radius: num(outer)?,
            verified_rank: int(rank)?,
            points: PointCloud::parse_lines(&mut lines)?,
        };
        let rank = witness.verify()?;
        if rank != witness.verified_rank {
            return Err(Error::Audit(format!(
                "recorded rank {} but recomputed {rank}",
                witness.verified_rank
            )));
        }
        Ok(witness)
    }
}

/// Distance from the circumcenter of the standard (k+1)-simplex to its
/// boundary, measured to the nearest facet barycenter.
pub fn circumcenter_boundary_distance(k: usize) -> f64 {
    let mesh = Mesh::standard_simplex_boundary(k);
    let n = mesh.dim;
    let center = vec![1.0 / n as f64; n];
    mesh.simplices
        .iter()
        .map(|facet| {
            let mut c = vec![0.0; n];
            for &v in facet {
                c[v] = 1.0 / facet.len() as f64;
            }
            crate::geometry::dist(&center, &c)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Builds a θ-persistent k-cycle witness: the vertices of an iterated
/// barycentric subdivision of the boundary of the standard (k+1)-simplex,
/// fine enough that every simplex has diameter at most r, with
/// r = 0.99·R*/θ and R* the circumcenter-to-boundary distance.
pub fn construct_witness(k: usize, theta: f64) -> Result<CycleWitness> {
    construct(k, theta, None)
}

/// As [`construct_witness`] but with a fixed number of subdivision rounds
/// instead of the diameter rule.
pub fn construct_witness_with_rounds(k: usize, theta: f64, rounds: usize) -> Result<CycleWitness> {
    construct(k, theta, Some(rounds))
}

/// Rounds of subdivision the diameter rule performs for `(k, θ)`.
pub fn subdivision_rounds(k: usize, theta: f64) -> Result<usize> {
    check_theta_k(k, theta)?;
    let r = 0.99 * circumcenter_boundary_distance(k) / theta;
    let mut mesh = Mesh::standard_simplex_boundary(k);
    let mut rounds = 0;
    while mesh.max_diameter() > r {
        mesh = mesh.subdivide();
        rounds += 1;
    }
    Ok(rounds)
}

fn check_theta_k(k: usize, theta: f64) -> Result<()> {
    if !(theta >= 1.0) || !theta.is_finite() {
        bail_arg!("theta must be finite and at least 1, got {theta}");
    }
    if k == 0 {
        bail_arg!("witness construction needs k ≥ 1");
    }
    Ok(())
}

fn construct(k: usize, theta: f64, rounds: Option<usize>) -> Result<CycleWitness> {
    check_theta_k(k, theta)?;
    let outer = circumcenter_boundary_distance(k);
    let r = 0.99 * outer / theta;
    let mut mesh = Mesh::standard_simplex_boundary(k);
    match rounds {
        Some(n) => (0..n).for_each(|_| mesh = mesh.subdivide()),
        None => {
            while mesh.max_diameter() > r {
                mesh = mesh.subdivide();
            }
        }
    }
    let points = PointCloud::from_points(mesh.dim, &mesh.coords)?;
    let rank = persistent_betti(&points, r, theta, k, FieldSpec::default())?;
    if rank == 0 {
        let message = format!(
            "subdivision witness for k={k}, theta={theta} failed verification ({} points)",
            points.len()
        );
        // the diameter rule guarantees a cycle; a fixed round count does not
        return Err(match rounds {
            None => Error::Internal(message),
            Some(_) => Error::Audit(message),
        });
    }
    Ok(CycleWitness {
        points,
        r,
        theta,
        k,
        outer_radius: outer,
        verified_rank: rank,
    })
}

/// δ = (R − θr)/(θ + 1), the displacement under which a cycle persisting
/// from r to R still persists from r+δ to θ(r+δ) = R−δ.
pub fn perturbation_radius(outer: f64, r: f64, theta: f64) -> Result<f64> {
    if !(r > 0.0 && theta >= 1.0 && outer > theta * r) || !outer.is_finite() {
        bail_arg!(
            "perturbation radius needs R > theta·r ≥ r > 0, got R={outer}, r={r}, theta={theta}"
        );
    }
    Ok((outer - theta * r) / (theta + 1.0))
}

/// Fraction of random δ-perturbations of `w` that still carry a θ-persistent
/// k-cycle at scale r+δ. `delta_scale` multiplies the formula's δ
/// (1.0 for the guaranteed case).
pub fn perturb_and_verify_scaled(
    w: &CycleWitness,
    rng: &mut Rng,
    trials: usize,
    delta_scale: f64,
) -> Result<f64> {
    let delta = perturbation_radius(w.outer_radius, w.r, w.theta)? * delta_scale;
    if trials == 0 {
        log::warn!("perturb_and_verify with zero trials reports 1.0 vacuously");
        return Ok(1.0);
    }
    let seed = rng::fork_seed(rng);
    let dim = w.points.dim();
    let successes: Result<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::stream(seed, &[t as u64]);
            let mut shift = vec![0.0; dim];
            let moved = w.points.map_points(|p, out| {
                uniform_in_ball(dim, delta, &mut rng, &mut shift);
                for ((o, x), s) in out.iter_mut().zip(p).zip(&shift) {
                    *o = x + s;
                }
            });
            Ok(persistent_betti(&moved, w.r + delta, w.theta, w.k, FieldSpec::default())? >= 1)
        })
        .collect();
    let successes = successes?;
    Ok(successes.iter().filter(|&&s| s).count() as f64 / trials as f64)
}

/// [`perturb_and_verify_scaled`] at the formula's δ.
pub fn perturb_and_verify(w: &CycleWitness, rng: &mut Rng, trials: usize) -> Result<f64> {
    perturb_and_verify_scaled(w, rng, trials, 1.0)
}

/// Geometric grid of `count` radii from `lo` to `hi`, endpoints exact.
fn radius_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let ratio = hi / lo;
    let mut grid: Vec<f64> = (0..count)
        .map(|i| lo * ratio.powf(i as f64 / (count - 1) as f64))
        .collect();
    grid[0] = lo;
    grid[count - 1] = hi;
    grid
}

/// Checks one configuration: returns a witness if some grid radius carries a
/// θ-persistent k-cycle.
fn scan_configuration(y: &PointCloud, k: usize, theta: f64) -> Option<CycleWitness> {
    let diam = y.diameter();
    if diam == 0.0 {
        return None;
    }
    let lo = match y.min_distance() / 2.0 {
        m if m > 0.0 => m,
        _ => diam * 1e-6,
    };
    let hi = diam / 2.0;
    // at radius diam every simplex of the cloud is present, so every
    // k-class (k ≥ 1) of the truncated complex has a finite death
    let diagram = compute_persistence(&cech_filtration(y, diam, k + 1), FieldSpec::default());
    if !diagram.in_dim(k).any(|i| i.death > theta * i.birth) {
        return None;
    }
    for r in radius_grid(lo, hi, SEARCH_GRID) {
        let outer = theta * r;
        let survivors: Vec<f64> = diagram
            .in_dim(k)
            .filter(|i| i.birth <= r && i.death > outer)
            .map(|i| i.death)
            .collect();
        if survivors.is_empty() {
            continue;
        }
        if !zeta_indicator(y, r, theta, k).unwrap_or(false) {
            continue;
        }
        let outer_radius = survivors.iter().copied().fold(outer, f64::max);
        return Some(CycleWitness {
            points: y.clone(),
            r,
            theta,
            k,
            outer_radius: if outer_radius.is_finite() {
                outer_radius
            } else {
                outer
            },
            verified_rank: survivors.len(),
        });
    }
    None
}

/// Necessary condition for a θ-persistent k-cycle (k ≥ 1). A class is born
/// no earlier than half the first edge closing a graph cycle. It is dead
/// once, for some vertex v, every (k+2)-subset containing v has entered,
/// since the complex then contains the cone from v over its k-skeleton.
fn may_carry_persistent_cycle(y: &PointCloud, theta: f64, k: usize) -> bool {
    let n = y.len();
    if n < k + 2 {
        return false;
    }
    let mut lengths = vec![0.0; n * n];
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let len = dist(y.point(i), y.point(j));
            lengths[i * n + j] = len;
            lengths[j * n + i] = len;
            edges.push((len, i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let closing = edges.iter().find_map(|&(len, i, j)| {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a == b {
            Some(len)
        } else {
            parent[a] = b;
            None
        }
    });
    let Some(closing) = closing else { return false };
    let mut cone = vec![0.0f64; n];
    let mut acute = Vec::new();
    let mut subset: Vec<usize> = (0..k + 2).collect();
    loop {
        let radius = if k == 1 {
            let [a, b, c] = [subset[0], subset[1], subset[2]];
            let (radius, is_acute) =
                triangle_radius_acute(lengths[a * n + b], lengths[b * n + c], lengths[a * n + c]);
            if is_acute {
                acute.push(radius);
            }
            radius
        } else {
            let pts: Vec<&[f64]> = subset.iter().map(|&i| y.point(i)).collect();
            match miniball(&pts) {
                Ok(ball) => ball.radius,
                Err(_) => return true,
            }
        };
        for &v in &subset {
            cone[v] = cone[v].max(radius);
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    let death_bound = cone.iter().copied().fold(f64::INFINITY, f64::min) * (1.0 + 1e-9);
    let birth_bound = theta * closing / 2.0;
    if k != 1 {
        return death_bound > birth_bound;
    }
    // a non-acute triangle enters together with its longest edge, so only
    // acute triangles can end a 1-interval of positive length
    acute
        .iter()
        .any(|&d| d * (1.0 + 1e-9) > birth_bound && d <= death_bound)
}

/// Smallest enclosing radius of a triangle with the given side lengths, and
/// whether it is acute up to a relative slack (near-right counts as acute).
fn triangle_radius_acute(a: f64, b: f64, c: f64) -> (f64, bool) {
    let mut s = [a, b, c];
    s.sort_by(f64::total_cmp);
    let [x, y, z] = s;
    let legs = x * x + y * y;
    let acute = z * z < legs * (1.0 + 1e-9);
    if z * z >= legs {
        return (z / 2.0, acute);
    }
    let area4 = ((x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z)).sqrt();
    (x * y * z / area4, acute)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Samples `trials` configurations of `p` uniform points in the unit cube
/// of R^d, rescaled to unit diameter, and returns the witness from the
/// lowest-numbered successful trial.
pub fn search_m(
    d: usize,
    k: usize,
    theta: f64,
    p: usize,
    trials: usize,
    rng: &mut Rng,
) -> Result<Option<CycleWitness>> {
    if !(theta >= 1.0) || !theta.is_finite() {
        bail_arg!("theta must be finite and at least 1, got {theta}");
    }
    if d == 0 {
        bail_arg!("dimension must be positive");
    }
    let cube = Density::unit_cube(d)?;
    let seed = rng::fork_seed(rng);
    let found = (0..trials).into_par_iter().find_map_first(|t| {
        let mut rng = rng::stream(seed, &[t as u64]);
        let y = sample_binomial(p, &cube, &mut rng).ok()?;
        if !may_carry_persistent_cycle(&y, theta, k) {
            return None;
        }
        let diam = y.diameter();
        if diam == 0.0 {
            return None;
        }
        scan_configuration(&y.scaled(1.0 / diam), k, theta)
    });
    Ok(found)
}

/// Bracket on m(θ, k) from randomized search.
#[derive(Debug, Clone, PartialEq)]
pub struct MBracket {
    pub theta: f64,
    pub k: usize,
    pub d: usize,
    /// Smallest cardinality at which a witness was found.
    pub upper: usize,
    /// Largest cardinality searched without finding a witness (k+1 when the
    /// first searched size succeeded; a k-cycle needs k+2 points).
    pub lower_searched: usize,
    pub trials_per_p: usize,
}

/// Searches p = k+2, k+3, …, `p_max` until a witness appears.
pub fn bracket_m(
    d: usize,
    k: usize,
    theta: f64,
    p_max: usize,
    trials: usize,
    rng: &mut Rng,
) -> Result<Option<(MBracket, CycleWitness)>> {
    for p in k + 2..=p_max {
        if let Some(w) = search_m(d, k, theta, p, trials, rng)? {
            let bracket = MBracket {
                theta,
                k,
                d,
                upper: p,
                lower_searched: p - 1,
                trials_per_p: trials,
            };
            return Ok(Some((bracket, w)));
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Σ_{i=0}^{p−m} C(p, m+i)·C(m+i, k+1): the bound on the θ-persistent rank
/// carried by p points, with each c_{q,k} bounded by C(q, k+1).
pub fn upper_bound_constant(p: usize, k: usize, m: usize) -> u128 {
    if p < m {
        return 0;
    }
    (m..=p).map(|q| binomial(p, q) * binomial(q, k + 1)).sum()
}
