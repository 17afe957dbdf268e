//! Smallest enclosing ball in R^d.
//!
//! Move-to-front Welzl recursion: the ball is determined by at most d+1
//! support points lying on its boundary, and the support ball of a point set
//! is its circumscribed ball within the affine hull. Containment tests use a
//! relative slack so that points numerically on the boundary do not trigger a
//! spurious (and degenerate) support update.

use crate::error::{bail_arg, Result};

use super::point_cloud::{dist, dist2};

/// Relative slack applied to squared radii in containment tests.
const CONTAIN_SLACK: f64 = 1e-12;
/// Relative pivot threshold below which a support set is treated as
/// affinely dependent.
const PIVOT_EPS: f64 = 1e-13;

/// A closed ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Self { center, radius }
    }

    /// Whether `p` lies in the ball up to a relative tolerance `rel`.
    pub fn contains(&self, p: &[f64], rel: f64) -> bool {
        dist(&self.center, p) <= self.radius * (1.0 + rel)
    }

    fn contains_slack(&self, p: &[f64]) -> bool {
        dist2(&self.center, p) <= self.radius * self.radius * (1.0 + CONTAIN_SLACK)
    }
}

/// Smallest closed ball containing `points`.
///
/// Deterministic for a fixed input order. One and two points are handled in
/// closed form so that an edge's ball radius is exactly half the distance.
pub fn miniball<P: AsRef<[f64]>>(points: &[P]) -> Result<Ball> {
    let Some(first) = points.first() else {
        bail_arg!("miniball of an empty point set");
    };
    let dim = first.as_ref().len();
    if points.iter().any(|p| p.as_ref().len() != dim) {
        bail_arg!("miniball points have inconsistent dimensions");
    }
    if points
        .iter()
        .flat_map(|p| p.as_ref())
        .any(|x| !x.is_finite())
    {
        bail_arg!("miniball of non-finite coordinates");
    }
    Ok(miniball_unchecked(points))
}

pub(crate) fn miniball_unchecked<P: AsRef<[f64]>>(points: &[P]) -> Ball {
    match points {
        [a] => return Ball::new(a.as_ref().to_vec(), 0.0),
        [a, b] => return diametral(a.as_ref(), b.as_ref()),
        _ => {}
    }
    let dim = points[0].as_ref().len();
    let mut order: Vec<&[f64]> = points.iter().map(|p| p.as_ref()).collect();
    let mut support: Vec<&[f64]> = Vec::with_capacity(dim + 1);
    let n = order.len();
    let ball = mtf(&mut order, n, &mut support, dim).expect("nonempty input has a ball");
    // Degenerate support fallbacks may leave points marginally outside.
    let reach = points
        .iter()
        .map(|p| dist(&ball.center, p.as_ref()))
        .fold(0.0, f64::max);
    if reach > ball.radius * (1.0 + 1e-10) {
        Ball::new(ball.center, reach)
    } else {
        ball
    }
}

fn diametral(a: &[f64], b: &[f64]) -> Ball {
    let center = a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
    Ball::new(center, 0.5 * dist(a, b))
}

fn mtf<'a>(
    order: &mut Vec<&'a [f64]>,
    end: usize,
    support: &mut Vec<&'a [f64]>,
    dim: usize,
) -> Option<Ball> {
    let mut ball = support_ball(support, dim);
    if support.len() == dim + 1 {
        return ball;
    }
    for i in 0..end {
        let p = order[i];
        if ball.as_ref().is_some_and(|b| b.contains_slack(p)) {
            continue;
        }
        support.push(p);
        ball = mtf(order, i, support, dim);
        support.pop();
        order.remove(i);
        order.insert(0, p);
    }
    ball
}

/// Circumscribed ball of `support` within its affine hull, or `None` for an
/// empty support. If the support is numerically affinely dependent, the
/// dependent points are dropped from the center solve.
fn support_ball(support: &[&[f64]], dim: usize) -> Option<Ball> {
    match support {
        [] => None,
        [a] => Some(Ball::new(a.to_vec(), 0.0)),
        [a, b] => Some(diametral(a, b)),
        _ => {
            let q0 = support[0];
            let m = support.len() - 1;
            let mut vs = vec![0.0; m * dim];
            for (row, q) in vs.chunks_exact_mut(dim).zip(&support[1..]) {
                for ((v, x), y) in row.iter_mut().zip(q.iter()).zip(q0) {
                    *v = x - y;
                }
            }
            // Gram system 2 (v_i . v_j) lambda_j = |v_i|^2, augmented row-major
            let w = m + 1;
            let mut a = vec![0.0; m * w];
            for i in 0..m {
                let vi = &vs[i * dim..(i + 1) * dim];
                for j in i..m {
                    let g = 2.0 * dot(vi, &vs[j * dim..(j + 1) * dim]);
                    a[i * w + j] = g;
                    a[j * w + i] = g;
                }
                a[i * w + m] = dot(vi, vi);
            }
            let lambda = solve_dropping_dependent(&mut a, m);
            let mut center = q0.to_vec();
            for (l, v) in lambda.iter().zip(vs.chunks_exact(dim)) {
                for (c, x) in center.iter_mut().zip(v) {
                    *c += l * x;
                }
            }
            let radius = support
                .iter()
                .map(|q| dist2(&center, q))
                .fold(0.0, f64::max)
                .sqrt();
            Some(Ball::new(center, radius))
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on a row-major augmented
/// m×(m+1) system. Columns whose pivot is negligible get coefficient zero.
fn solve_dropping_dependent(a: &mut [f64], m: usize) -> Vec<f64> {
    let w = m + 1;
    let scale = (0..m)
        .map(|i| a[i * w + i].abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut pivot_row_of_col = vec![usize::MAX; m];
    let mut row = 0;
    for col in 0..m {
        if row == m {
            break;
        }
        let (best, best_val) = (row..m)
            .map(|r| (r, a[r * w + col].abs()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_val <= PIVOT_EPS * scale {
            continue;
        }
        if best != row {
            for c in 0..w {
                a.swap(row * w + c, best * w + c);
            }
        }
        for r in 0..m {
            if r != row {
                let f = a[r * w + col] / a[row * w + col];
                if f != 0.0 {
                    for c in col..w {
                        a[r * w + c] -= f * a[row * w + c];
                    }
                }
            }
        }
        pivot_row_of_col[col] = row;
        row += 1;
    }
    pivot_row_of_col
        .iter()
        .enumerate()
        .map(|(col, &r)| {
            if r == usize::MAX {
                0.0
            } else {
                a[r * w + m] / a[r * w + col]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let b = miniball(&[[3.0, -1.0]]).unwrap();
        assert_eq!(b, Ball::new(vec![3.0, -1.0], 0.0));
        let b = miniball(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert_eq!(b.radius, 0.5);
        assert_eq!(b.center, vec![0.5, 0.0]);
        let empty: [[f64; 2]; 0] = [];
        assert!(miniball(&empty).is_err());
    }

    #[test]
    fn equilateral_triangle() {
        let h = 3f64.sqrt() / 2.0;
        let b = miniball(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]]).unwrap();
        assert!((b.radius - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn obtuse_triangle_uses_long_edge() {
        let b = miniball(&[[0.0, 0.0], [4.0, 0.0], [2.0, 0.5]]).unwrap();
        assert_eq!(b.radius, 2.0);
    }

    #[test]
    fn degenerate_inputs() {
        // collinear, duplicated and coplanar-in-3d inputs
        let b = miniball(&[[0.0], [1.0], [3.0], [2.0]]).unwrap();
        assert_eq!(b.radius, 1.5);
        let b = miniball(&[[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(b.radius, 0.0);
        let sq = [
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 1.0],
            [1.0, 1.0, 1.0],
            [0.0, 1.0, 1.0],
        ];
        let b = miniball(&sq).unwrap();
        assert!((b.radius - 2f64.sqrt() / 2.0).abs() < 1e-12);
    }
}
