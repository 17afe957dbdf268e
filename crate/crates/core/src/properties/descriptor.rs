//! Finite geometric properties and subset properties.
//!
//! A property is an indicator on finite point sets with an arity `p`, a scale
//! `r` and a locality constant `C`: it vanishes unless `|Y| = p`, and it only
//! holds on sets of diameter at most `C·r·p`. Built-in properties are
//! translation invariant and scale equivariant; `at_scale` moves a property
//! along its scale family.

use std::fmt;
use std::sync::Arc;

use rand::Rng as _;

use crate::error::{bail_arg, Result};
use crate::geometry::{dist, geometric_graph, uniform_in_ball, PointCloud};
use crate::rng;
use crate::witness::zeta_indicator;

use super::small_graph::SmallGraph;

type CustomFn = Arc<dyn Fn(&PointCloud, f64) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum PropertyKind {
    /// G(Y, r) is isomorphic to a fixed connected graph.
    IsoGraph(SmallGraph),
    /// All pairwise distances in `(r, r·p]`.
    Spread,
    /// Čech_r(Y) is connected.
    Conn,
    /// Y carries a θ-persistent k-cycle at scale r and is connected at θr.
    Zeta { theta: f64, k: usize },
    /// User indicator `(Y, r) -> bool`.
    Custom(CustomFn),
}

impl fmt::Debug for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyKind::IsoGraph(g) => f.debug_tuple("IsoGraph").field(g).finish(),
            PropertyKind::Spread => f.write_str("Spread"),
            PropertyKind::Conn => f.write_str("Conn"),
            PropertyKind::Zeta { theta, k } => f
                .debug_struct("Zeta")
                .field("theta", theta)
                .field("k", k)
                .finish(),
            PropertyKind::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// A finite geometric property g_{r,p}.
#[derive(Debug, Clone)]
pub struct PropertyDescriptor {
    kind: PropertyKind,
    arity: usize,
    scale: f64,
    diam_factor: f64,
}

fn check_scale(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        bail_arg!("property scale must be positive and finite, got {r}");
    }
    Ok(())
}

fn check_arity(p: usize) -> Result<()> {
    if p == 0 {
        bail_arg!("property arity must be positive");
    }
    Ok(())
}

/// Whether the graph on `y` joining points at distance ≤ `s` is connected.
pub(crate) fn connected_at(y: &PointCloud, s: f64) -> bool {
    let n = y.len();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !seen[w] && dist(y.point(v), y.point(w)) <= s {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == n
}

impl PropertyDescriptor {
    /// `1_{|Y|=p} · 1_{G(Y,r) ≅ Γ}` with `p = |V(Γ)|`; Γ must be connected.
    pub fn iso_graph(gamma: SmallGraph, r: f64) -> Result<Self> {
        check_scale(r)?;
        if !gamma.is_connected() {
            bail_arg!("iso_graph needs a connected pattern graph");
        }
        let arity = gamma.vertex_count();
        Ok(Self {
            kind: PropertyKind::IsoGraph(gamma),
            arity,
            scale: r,
            diam_factor: 1.0,
        })
    }

    /// p points with all pairwise distances greater than r and diameter at
    /// most r·p.
    pub fn spread(r: f64, p: usize) -> Result<Self> {
        check_scale(r)?;
        check_arity(p)?;
        Ok(Self {
            kind: PropertyKind::Spread,
            arity: p,
            scale: r,
            diam_factor: 1.0,
        })
    }

    /// p points whose r-balls have a connected union (Čech_r(Y) connected).
    pub fn conn(r: f64, p: usize) -> Result<Self> {
        check_scale(r)?;
        check_arity(p)?;
        // a connected chain of p balls of radius r spans at most 2r(p-1)
        Ok(Self {
            kind: PropertyKind::Conn,
            arity: p,
            scale: r,
            diam_factor: 2.0,
        })
    }

    /// p points forming a θ-persistent k-cycle at scale r, connected at
    /// scale θr.
    pub fn zeta(r: f64, p: usize, theta: f64, k: usize) -> Result<Self> {
        check_scale(r)?;
        check_arity(p)?;
        if !(theta >= 1.0) || !theta.is_finite() {
            bail_arg!("theta must be finite and at least 1, got {theta}");
        }
        Ok(Self {
            kind: PropertyKind::Zeta { theta, k },
            arity: p,
            scale: r,
            diam_factor: 2.0 * theta,
        })
    }

    /// A user-supplied indicator with declared locality constant.
    ///
    /// Locality is probed on random configurations of diameter above
    /// `C·r·p`; an indicator that fires on any of them is rejected.
    pub fn custom(
        p: usize,
        r: f64,
        diam_factor: f64,
        dim: usize,
        indicator: impl Fn(&PointCloud, f64) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        check_scale(r)?;
        check_arity(p)?;
        if !(diam_factor > 0.0) || !diam_factor.is_finite() || dim == 0 {
            bail_arg!("custom property needs a positive locality constant and dimension");
        }
        let desc = Self {
            kind: PropertyKind::Custom(Arc::new(indicator)),
            arity: p,
            scale: r,
            diam_factor,
        };
        desc.probe_locality(dim)?;
        Ok(desc)
    }

    fn probe_locality(&self, dim: usize) -> Result<()> {
        const PROBES: u64 = 512;
        if self.arity < 2 {
            return Ok(());
        }
        let bound = self.locality_bound();
        let mut rng = rng::stream(0x10ca1, &[self.arity as u64]);
        let mut x = vec![0.0; dim];
        for _ in 0..PROBES {
            // two points just beyond the bound, the rest scattered around them
            let spread = bound * (1.0 + rng.random::<f64>());
            let mut y = PointCloud::empty(dim)?;
            y.push(&vec![0.0; dim]);
            uniform_in_ball(dim, 1.0, &mut rng, &mut x);
            let norm = x
                .iter()
                .map(|v| v * v)
                .sum::<f64>()
                .sqrt()
                .max(f64::MIN_POSITIVE);
            x.iter_mut().for_each(|v| *v *= spread / norm);
            y.push(&x);
            for _ in 2..self.arity {
                uniform_in_ball(dim, spread, &mut rng, &mut x);
                y.push(&x);
            }
            if y.diameter() > bound && self.eval(&y) {
                bail_arg!(
                    "property is not local: it holds on a set of diameter {} > C·r·p = {bound}",
                    y.diameter()
                );
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &PropertyKind {
        &self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn diam_factor(&self) -> f64 {
        self.diam_factor
    }

    /// `C·r·p`: no satisfying set is wider than this.
    pub fn locality_bound(&self) -> f64 {
        self.diam_factor * self.scale * self.arity as f64
    }

    /// The same property at scale `r`.
    pub fn at_scale(&self, r: f64) -> Result<Self> {
        check_scale(r)?;
        Ok(Self {
            scale: r,
            ..self.clone()
        })
    }

    /// A scale at which every satisfying set is connected in the geometric
    /// graph, if the property guarantees one.
    pub(crate) fn link_scale(&self) -> Option<f64> {
        match &self.kind {
            PropertyKind::IsoGraph(_) => Some(self.scale),
            PropertyKind::Conn => Some(2.0 * self.scale),
            PropertyKind::Zeta { theta, .. } => Some(2.0 * theta * self.scale),
            PropertyKind::Spread | PropertyKind::Custom(_) => None,
        }
    }

    /// Evaluates g_{r,p}(Y).
    pub fn eval(&self, y: &PointCloud) -> bool {
        if y.len() != self.arity {
            return false;
        }
        let r = self.scale;
        match &self.kind {
            PropertyKind::IsoGraph(gamma) => {
                let g =
                    SmallGraph::from_predicate(y.len(), |a, b| dist(y.point(a), y.point(b)) <= r);
                g.is_isomorphic(gamma)
            }
            PropertyKind::Spread => {
                let limit = r * self.arity as f64;
                (0..y.len()).all(|a| {
                    (a + 1..y.len()).all(|b| {
                        let d = dist(y.point(a), y.point(b));
                        d > r && d <= limit
                    })
                })
            }
            PropertyKind::Conn => connected_at(y, 2.0 * r),
            PropertyKind::Zeta { theta, k } => {
                connected_at(y, 2.0 * theta * r)
                    && zeta_indicator(y, r, *theta, *k).unwrap_or(false)
            }
            PropertyKind::Custom(f) => f(y, r),
        }
    }
}

/// The context factor h̃ of a subset property.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Context {
    /// h̃ ≡ 1.
    Always,
    /// sep at scale `factor·r`: every point of X∖Y is farther than
    /// `2·factor·r` from every point of Y.
    Sep { factor: f64 },
}

/// A finite geometric subset property h(Y, X) = h̃(Y, X) · g(Y).
#[derive(Debug, Clone)]
pub struct SubsetPropertyDescriptor {
    base: PropertyDescriptor,
    context: Context,
}

/// sep_s(Y, X): no point of X outside `y` lies within distance 2s of `y`.
pub fn sep_indicator(y: &[usize], x: &PointCloud, s: f64) -> bool {
    let limit = 2.0 * s;
    (0..x.len())
        .filter(|i| !y.contains(i))
        .all(|i| y.iter().all(|&j| dist(x.point(i), x.point(j)) > limit))
}

impl SubsetPropertyDescriptor {
    pub fn new(base: PropertyDescriptor, context: Context) -> Result<Self> {
        if let Context::Sep { factor } = context {
            if !(factor > 0.0) || !factor.is_finite() {
                bail_arg!("separation factor must be positive, got {factor}");
            }
        }
        Ok(Self { base, context })
    }

    /// h(Y, X) = g(Y); subset counts then reduce to plain counts.
    pub fn plain(base: PropertyDescriptor) -> Self {
        Self {
            base,
            context: Context::Always,
        }
    }

    /// sep(r) · conn(r, p): Y is an isolated connected component of Čech_r(X).
    pub fn comp(r: f64, p: usize) -> Result<Self> {
        Self::new(
            PropertyDescriptor::conn(r, p)?,
            Context::Sep { factor: 1.0 },
        )
    }

    /// sep(r) · iso_graph(Γ, r).
    pub fn component(gamma: SmallGraph, r: f64) -> Result<Self> {
        Self::new(
            PropertyDescriptor::iso_graph(gamma, r)?,
            Context::Sep { factor: 1.0 },
        )
    }

    /// sep(θr) · zeta(r, p, θ, k): Y forms an isolated θ-persistent k-cycle.
    pub fn upsilon(r: f64, p: usize, theta: f64, k: usize) -> Result<Self> {
        Self::new(
            PropertyDescriptor::zeta(r, p, theta, k)?,
            Context::Sep { factor: theta },
        )
    }

    pub fn base(&self) -> &PropertyDescriptor {
        &self.base
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn arity(&self) -> usize {
        self.base.arity
    }

    pub fn scale(&self) -> f64 {
        self.base.scale
    }

    pub fn at_scale(&self, r: f64) -> Result<Self> {
        Ok(Self {
            base: self.base.at_scale(r)?,
            context: self.context,
        })
    }

    /// Separation distance of the context (points at or within it break
    /// isolation), if any.
    pub(crate) fn sep_distance(&self) -> Option<f64> {
        match self.context {
            Context::Always => None,
            Context::Sep { factor } => Some(2.0 * factor * self.base.scale),
        }
    }

    /// h̃(Y, X) for `Y` given as indices into `X`.
    pub fn context_holds(&self, y: &[usize], x: &PointCloud) -> bool {
        match self.context {
            Context::Always => true,
            Context::Sep { factor } => sep_indicator(y, x, factor * self.base.scale),
        }
    }

    /// h(Y, X) for `Y` given as distinct indices into `X`.
    pub fn eval(&self, y: &[usize], x: &PointCloud) -> bool {
        y.len() == self.base.arity && self.context_holds(y, x) && self.base.eval(&x.subset(y))
    }
}

/// Builds G(Y, s) adjacency for the enumeration routines.
pub(crate) fn adjacency_at(points: &PointCloud, s: f64) -> Vec<Vec<usize>> {
    geometric_graph(points, s)
        .expect("positive scale")
        .adjacency()
}
