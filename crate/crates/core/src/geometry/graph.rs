use std::collections::HashMap;

use crate::error::{bail_arg, Result};

use super::point_cloud::{dist, PointCloud};

/// The geometric graph G(P, r): an edge for every pair at distance ≤ r.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    vertex_count: usize,
    scale: f64,
    edges: Vec<(usize, usize)>,
}

impl GeometricGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Below this size all pairs are compared directly.
const BRUTE_FORCE_MAX: usize = 48;

/// Builds G(P, r) by bucketing points into a uniform grid of cell width r
/// and comparing only points in neighbouring cells.
pub fn geometric_graph(points: &PointCloud, r: f64) -> Result<GeometricGraph> {
    if !(r >= 0.0) || !r.is_finite() {
        bail_arg!("geometric graph scale must be finite and nonnegative, got {r}");
    }
    let n = points.len();
    let mut edges = Vec::new();
    if r == 0.0 {
        // only coincident points are joined
        let mut groups: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            groups
                .entry(p.iter().map(|x| (x + 0.0).to_bits()).collect())
                .or_default()
                .push(i);
        }
        for g in groups.values() {
            for (a, &i) in g.iter().enumerate() {
                for &j in &g[a + 1..] {
                    edges.push((i.min(j), i.max(j)));
                }
            }
        }
    } else if n <= BRUTE_FORCE_MAX {
        for i in 0..n {
            for j in i + 1..n {
                if dist(points.point(i), points.point(j)) <= r {
                    edges.push((i, j));
                }
            }
        }
    } else {
        let grid = SpatialGrid::new(points, r);
        for i in 0..n {
            let p = points.point(i);
            grid.for_each_candidate(p, |j| {
                if j > i && dist(p, points.point(j)) <= r {
                    edges.push((i, j));
                }
            });
        }
    }
    edges.sort_unstable();
    Ok(GeometricGraph {
        vertex_count: n,
        scale: r,
        edges,
    })
}

/// Uniform hash grid over a point cloud.
pub(crate) struct SpatialGrid {
    cell: f64,
    dim: usize,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl SpatialGrid {
    pub(crate) fn new(points: &PointCloud, cell: f64) -> Self {
        debug_assert!(cell > 0.0);
        let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets.entry(Self::key(p, cell)).or_default().push(i);
        }
        Self {
            cell,
            dim: points.dim(),
            buckets,
        }
    }

    fn key(p: &[f64], cell: f64) -> Vec<i64> {
        p.iter().map(|x| (x / cell).floor() as i64).collect()
    }

    /// Calls `f` on every indexed point in the 3^d cells around `p`. Any point
    /// within distance `cell` of `p` is among them.
    pub(crate) fn for_each_candidate(&self, p: &[f64], mut f: impl FnMut(usize)) {
        let base = Self::key(p, self.cell);
        let mut offset = vec![-1i64; self.dim];
        let mut key = vec![0i64; self.dim];
        loop {
            for ((k, b), o) in key.iter_mut().zip(&base).zip(&offset) {
                *k = b + o;
            }
            if let Some(bucket) = self.buckets.get(&key) {
                bucket.iter().copied().for_each(&mut f);
            }
            // odometer over {-1, 0, 1}^d
            let mut axis = 0;
            loop {
                if axis == self.dim {
                    return;
                }
                offset[axis] += 1;
                if offset[axis] <= 1 {
                    break;
                }
                offset[axis] = -1;
                axis += 1;
            }
        }
    }
}
