//! Betti numbers by direct rank computation, independent of the persistence
//! algorithm: β_k = dim C_k − rank ∂_k − rank ∂_{k+1} on the full Čech
//! complex at one radius.

use std::collections::HashMap;

use crate::error::{bail_arg, Result};
use crate::geometry::{miniball, PointCloud};

use super::field::FieldSpec;

/// Largest cloud accepted by [`betti_oracle`].
pub const ORACLE_MAX_POINTS: usize = 16;

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    if size > 0 {
        rec(0, n, size, &mut cur, &mut out);
    }
    out
}

fn simplices_at(points: &PointCloud, r: f64, size: usize) -> Vec<Vec<usize>> {
    combinations(points.len(), size)
        .into_iter()
        .filter(|s| {
            let coords: Vec<&[f64]> = s.iter().map(|&v| points.point(v)).collect();
            miniball(&coords).map(|b| b.radius <= r).unwrap_or(false)
        })
        .collect()
}

/// Rank over Z/pZ of the boundary map from `upper` simplices to `lower`.
fn boundary_rank(upper: &[Vec<usize>], lower: &[Vec<usize>], field: FieldSpec) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let row_of: HashMap<&[usize], usize> = lower
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut m = vec![vec![0u32; upper.len()]; lower.len()];
    for (c, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            if let Some(&row) = row_of.get(face.as_slice()) {
                m[row][c] = field.sign(skip);
            }
        }
    }
    dense_rank(&mut m, field)
}

fn dense_rank(m: &mut [Vec<u32>], field: FieldSpec) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = field.neg(m[r][c]);
                for cc in c..cols {
                    let add = field.mul(f, m[rank][cc]);
                    m[r][cc] = field.add(m[r][cc], add);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// β_k of Čech_r(points) from boundary ranks. Limited to
/// [`ORACLE_MAX_POINTS`] points.
pub fn betti_oracle(points: &PointCloud, r: f64, k: usize, field: FieldSpec) -> Result<usize> {
    if points.len() > ORACLE_MAX_POINTS {
        bail_arg!(
            "oracle limited to {ORACLE_MAX_POINTS} points, got {}",
            points.len()
        );
    }
    if !(r >= 0.0) {
        bail_arg!("radius must be nonnegative, got {r}");
    }
    let lower = if k == 0 {
        Vec::new()
    } else {
        simplices_at(points, r, k)
    };
    let middle = simplices_at(points, r, k + 1);
    let upper = simplices_at(points, r, k + 2);
    let rank_k = boundary_rank(&middle, &lower, field);
    let rank_k1 = boundary_rank(&upper, &middle, field);
    Ok(middle.len() - rank_k - rank_k1)
}

/// β_k^θ of Čech_r(points) from boundary ranks, with s = θr:
/// dim(Z_k(r) + B_k(s)) − dim B_k(s), where Z_k(r) + B_k(s) is the kernel of
/// ∂_k on C_k(r) + B_k(s).
pub fn persistent_betti_oracle(
    points: &PointCloud,
    r: f64,
    theta: f64,
    k: usize,
    field: FieldSpec,
) -> Result<usize> {
    if points.len() > ORACLE_MAX_POINTS {
        bail_arg!(
            "oracle limited to {ORACLE_MAX_POINTS} points, got {}",
            points.len()
        );
    }
    if !(r >= 0.0) || !(theta >= 1.0) {
        bail_arg!("need r ≥ 0 and theta ≥ 1, got r = {r}, theta = {theta}");
    }
    let s = theta * r;
    let lower = if k == 0 {
        Vec::new()
    } else {
        simplices_at(points, r, k)
    };
    let middle = simplices_at(points, r, k + 1);
    let middle_outer = simplices_at(points, s, k + 1);
    let upper_outer = simplices_at(points, s, k + 2);
    let outside: Vec<Vec<usize>> = middle_outer
        .into_iter()
        .filter(|c| !middle.contains(c))
        .collect();
    let span = middle.len() + boundary_rank(&upper_outer, &outside, field);
    Ok(span
        - boundary_rank(&middle, &lower, field)
        - boundary_rank(&upper_outer, &simplices_at(points, s, k + 1), field))
}
