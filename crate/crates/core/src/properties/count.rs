//! Count and SubsetCount over point clouds.
//!
//! Enumeration only visits candidate p-subsets allowed by locality: connected
//! subsets of the geometric graph at the property's link scale when it has
//! one, otherwise p-cliques of the graph at `C·r·p` (sets of bounded
//! diameter). Both contain every satisfying subset.

use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::PointCloud;

use super::descriptor::{adjacency_at, PropertyDescriptor, SubsetPropertyDescriptor};
use super::enumerate::{cliques, connected_subsets};
use super::small_graph::SmallGraph;

fn candidates(g: &PropertyDescriptor, points: &PointCloud) -> Vec<Vec<usize>> {
    let p = g.arity();
    let mut out = Vec::new();
    if p > points.len() {
        return out;
    }
    if p == 1 {
        return (0..points.len()).map(|i| vec![i]).collect();
    }
    let mut push = |s: &[usize]| {
        let mut s = s.to_vec();
        s.sort_unstable();
        out.push(s);
    };
    match g.link_scale() {
        Some(s) => connected_subsets(&adjacency_at(points, s), p, &mut push),
        None => cliques(&adjacency_at(points, g.locality_bound()), p, &mut push),
    }
    out
}

/// Count(g, P) = Σ_{Y ⊆ P} g(Y).
pub fn count_property(g: &PropertyDescriptor, points: &PointCloud) -> u64 {
    candidates(g, points)
        .par_iter()
        .filter(|s| g.eval(&points.subset(s)))
        .count() as u64
}

/// SubsetCount(h, P) = Σ_{Y ⊆ P} h(Y, P).
pub fn subset_count(h: &SubsetPropertyDescriptor, points: &PointCloud) -> u64 {
    let sep_adjacency = h.sep_distance().map(|s| adjacency_at(points, s));
    candidates(h.base(), points)
        .par_iter()
        .filter(|s| {
            let isolated = match &sep_adjacency {
                None => true,
                Some(adj) => s
                    .iter()
                    .all(|&v| adj[v].iter().all(|u| s.binary_search(u).is_ok())),
            };
            isolated && h.base().eval(&points.subset(s))
        })
        .count() as u64
}

/// Number of subsets that are separated at scale r and whose geometric graph
/// at scale r is isomorphic to `gamma`.
pub fn component_count(gamma: &SmallGraph, points: &PointCloud, r: f64) -> Result<u64> {
    let h = SubsetPropertyDescriptor::component(gamma.clone(), r)?;
    Ok(subset_count(&h, points))
}
