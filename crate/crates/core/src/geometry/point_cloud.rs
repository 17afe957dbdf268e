use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{bail_arg, Error, Result};

/// A finite, ordered set of points in R^d.
///
/// Coordinates are stored row-major in one buffer. Point indices are stable
/// identifiers; duplicate points are allowed (see [`PointCloud::duplicates`]).
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    /// Empty cloud in dimension `dim`.
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            bail_arg!("point cloud dimension must be positive");
        }
        Ok(Self {
            dim,
            coords: Vec::new(),
        })
    }

    /// Builds a cloud from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            bail_arg!("point cloud dimension must be positive");
        }
        if coords.len() % dim != 0 {
            bail_arg!(
                "coordinate buffer of length {} is not a multiple of dimension {dim}",
                coords.len()
            );
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            bail_arg!("non-finite coordinate {bad}");
        }
        Ok(Self { dim, coords })
    }

    pub fn from_points<P: AsRef<[f64]>>(dim: usize, points: &[P]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != dim {
                bail_arg!("point {i} has {} coordinates, expected {dim}", p.len());
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// Appends a point; panics if its length differs from the dimension.
    pub fn push(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.dim, "point dimension mismatch");
        self.coords.extend_from_slice(p);
    }

    /// The sub-cloud on the given indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointCloud {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointCloud {
            dim: self.dim,
            coords,
        }
    }

    /// Concatenation of two clouds of the same dimension.
    pub fn concat(&self, other: &PointCloud) -> Result<PointCloud> {
        if self.dim != other.dim {
            bail_arg!("dimension mismatch: {} vs {}", self.dim, other.dim);
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Ok(PointCloud {
            dim: self.dim,
            coords,
        })
    }

    /// Applies `f` to every coordinate vector.
    pub fn map_points(&self, mut f: impl FnMut(&[f64], &mut [f64])) -> PointCloud {
        let mut coords = vec![0.0; self.coords.len()];
        for (src, dst) in self
            .coords
            .chunks_exact(self.dim)
            .zip(coords.chunks_exact_mut(self.dim))
        {
            f(src, dst);
        }
        PointCloud {
            dim: self.dim,
            coords,
        }
    }

    pub fn translated(&self, t: &[f64]) -> PointCloud {
        assert_eq!(t.len(), self.dim);
        self.map_points(|p, out| {
            for ((o, x), s) in out.iter_mut().zip(p).zip(t) {
                *o = x + s;
            }
        })
    }

    pub fn scaled(&self, lambda: f64) -> PointCloud {
        self.map_points(|p, out| {
            for (o, x) in out.iter_mut().zip(p) {
                *o = x * lambda;
            }
        })
    }

    /// Groups of indices sharing identical coordinates (groups of size ≥ 2).
    pub fn duplicates(&self) -> Vec<Vec<usize>> {
        let mut groups: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for (i, p) in self.iter().enumerate() {
            // +0.0 and -0.0 are the same point
            let key = p.iter().map(|x| (x + 0.0).to_bits()).collect();
            groups.entry(key).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().filter(|g| g.len() > 1).collect();
        out.sort();
        out
    }

    /// Largest pairwise distance (0 for fewer than two points).
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(dist(self.point(i), self.point(j)));
            }
        }
        best
    }

    /// Smallest pairwise distance (infinite for fewer than two points).
    pub fn min_distance(&self) -> f64 {
        let n = self.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                best = best.min(dist(self.point(i), self.point(j)));
            }
        }
        best
    }

    /// Serializes as `d N` followed by one line of `d` coordinates per point.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.dim, self.len()).unwrap();
        for p in self.iter() {
            let mut first = true;
            for x in p {
                if !first {
                    s.push(' ');
                }
                first = false;
                write!(s, "{x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`PointCloud::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        Self::parse_lines(&mut lines)
    }

    pub(crate) fn parse_lines<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Self> {
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `d N` header".into()))?;
        let mut it = header.split_whitespace();
        let (d, n) = match (it.next(), it.next(), it.next()) {
            (Some(d), Some(n), None) => (
                d.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad dimension {d:?}: {e}")))?,
                n.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad count {n:?}: {e}")))?,
            ),
            _ => {
                return Err(Error::Parse(format!(
                    "expected `d N` header, got {header:?}"
                )))
            }
        };
        let mut coords = Vec::with_capacity(d * n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {n} points, found {i}")))?;
            let before = coords.len();
            for tok in line.split_whitespace() {
                coords.push(
                    tok.parse::<f64>()
                        .map_err(|e| Error::Parse(format!("point {i}: bad float {tok:?}: {e}")))?,
                );
            }
            if coords.len() - before != d {
                return Err(Error::Parse(format!(
                    "point {i} has {} coordinates, expected {d}",
                    coords.len() - before
                )));
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!(
                "trailing content after {n} points: {extra:?}"
            )));
        }
        Self::from_flat(d, coords).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Euclidean distance. Every distance comparison in the crate goes through
/// this function so that thresholds agree bit-for-bit.
#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist2(a, b).sqrt()
}

#[inline]
pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
