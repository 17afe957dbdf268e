use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::field::FieldSpec;

/// A persistence interval `[birth, death)` in homological dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    /// `f64::INFINITY` for essential classes.
    pub death: f64,
}

impl Interval {
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// Whether the class is alive at scale `r` (closed complexes: born at or
    /// before `r`, not yet dead at `r`).
    pub fn alive_at(&self, r: f64) -> bool {
        self.birth <= r && r < self.death
    }
}

/// Multiset of persistence intervals, sorted by `(dim, birth, death)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    intervals: Vec<Interval>,
    field: FieldSpec,
}

impl PersistenceDiagram {
    pub fn new(mut intervals: Vec<Interval>, field: FieldSpec) -> Self {
        intervals.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        Self { intervals, field }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn in_dim(&self, k: usize) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter().filter(move |i| i.dim == k)
    }

    /// Rank of H_k at scale `r`.
    pub fn betti_at(&self, k: usize, r: f64) -> usize {
        self.in_dim(k).filter(|i| i.alive_at(r)).count()
    }

    /// Rank of H_k(K_r → K_s) for `r ≤ s`: classes born by `r` and still
    /// alive at `s`.
    pub fn persistent_rank(&self, k: usize, r: f64, s: f64) -> usize {
        self.in_dim(k)
            .filter(|i| i.birth <= r && i.death > s)
            .count()
    }

    /// CSV with header `dim,birth,death`; essential deaths are written `inf`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("dim,birth,death\n");
        for i in &self.intervals {
            if i.is_essential() {
                writeln!(s, "{},{},inf", i.dim, i.birth).unwrap();
            } else {
                writeln!(s, "{},{},{}", i.dim, i.birth, i.death).unwrap();
            }
        }
        s
    }

    pub fn from_csv(text: &str, field: FieldSpec) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next().map(str::trim) {
            Some("dim,birth,death") => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header `dim,birth,death`, got {other:?}"
                )))
            }
        }
        let mut intervals = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.trim().split(',').collect();
            let [dim, birth, death] = fields[..] else {
                return Err(Error::Parse(format!("expected three fields in {line:?}")));
            };
            let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("{line:?}: {e}"));
            let dim = dim.parse::<usize>().map_err(|e| bad(&e))?;
            let birth = birth.parse::<f64>().map_err(|e| bad(&e))?;
            let death = if death == "inf" {
                f64::INFINITY
            } else {
                death.parse::<f64>().map_err(|e| bad(&e))?
            };
            if !(birth <= death) {
                return Err(Error::Parse(format!("{line:?}: birth after death")));
            }
            intervals.push(Interval { dim, birth, death });
        }
        Ok(Self::new(intervals, field))
    }
}

/// Bottleneck distance between the dimension-`k` parts of two diagrams.
///
/// Essential classes are matched among themselves by birth; a mismatch in
/// their number gives an infinite distance.
pub fn bottleneck_distance(a: &PersistenceDiagram, b: &PersistenceDiagram, k: usize) -> f64 {
    let split = |d: &PersistenceDiagram| {
        let (ess, fin): (Vec<Interval>, Vec<Interval>) =
            d.in_dim(k).partition(|i| i.is_essential());
        let mut ess: Vec<f64> = ess.iter().map(|i| i.birth).collect();
        ess.sort_by(f64::total_cmp);
        (ess, fin)
    };
    let (ea, fa) = split(a);
    let (eb, fb) = split(b);
    if ea.len() != eb.len() {
        return f64::INFINITY;
    }
    // sorted births are an optimal matching for points on a line
    let essential = ea
        .iter()
        .zip(&eb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);

    let linf =
        |x: &Interval, y: &Interval| (x.birth - y.birth).abs().max((x.death - y.death).abs());
    let diag = |x: &Interval| 0.5 * (x.death - x.birth);
    let mut candidates: Vec<f64> = vec![0.0];
    candidates.extend(fa.iter().map(diag));
    candidates.extend(fb.iter().map(diag));
    for x in &fa {
        for y in &fb {
            candidates.push(linf(x, y));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // Left side: points of A then diagonal slots for B; right side: points
    // of B then diagonal slots for A.
    let (na, nb) = (fa.len(), fb.len());
    let feasible = |eps: f64| {
        let adjacency: Vec<Vec<usize>> = (0..na + nb)
            .map(|u| {
                let mut out = Vec::new();
                if u < na {
                    out.extend((0..nb).filter(|&v| linf(&fa[u], &fb[v]) <= eps));
                    if diag(&fa[u]) <= eps {
                        out.push(nb + u);
                    }
                } else {
                    let j = u - na;
                    if diag(&fb[j]) <= eps {
                        out.push(j);
                    }
                    out.extend(nb..nb + na);
                }
                out
            })
            .collect();
        perfect_matching(&adjacency, na + nb)
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo].max(essential)
}

/// Kuhn's augmenting-path algorithm; true iff every left vertex is matched.
fn perfect_matching(adjacency: &[Vec<usize>], right: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v] == usize::MAX || augment(owner[v], adj, seen, owner) {
                    owner[v] = u;
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; right];
    (0..adjacency.len()).all(|u| augment(u, adjacency, &mut vec![false; right], &mut owner))
}
