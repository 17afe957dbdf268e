use std::fmt;
use std::sync::Arc;

use crate::error::{bail_config, Result};

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A bounded probability density with bounded support.
#[derive(Clone)]
pub enum Density {
    /// Uniform on the axis-aligned box `[lo, hi]`.
    UniformBox { lo: Vec<f64>, hi: Vec<f64> },
    /// A user density supported in `[lo, hi]` with `f ≤ bound`, sampled by
    /// rejection against the box.
    Custom {
        lo: Vec<f64>,
        hi: Vec<f64>,
        bound: f64,
        evaluator: Evaluator,
    },
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::UniformBox { lo, hi } => f
                .debug_struct("UniformBox")
                .field("lo", lo)
                .field("hi", hi)
                .finish(),
            Density::Custom { lo, hi, bound, .. } => f
                .debug_struct("Custom")
                .field("lo", lo)
                .field("hi", hi)
                .field("bound", bound)
                .finish_non_exhaustive(),
        }
    }
}

fn check_box(lo: &[f64], hi: &[f64]) -> Result<()> {
    if lo.is_empty() || lo.len() != hi.len() {
        bail_config!("box corners must be nonempty and of equal dimension");
    }
    if lo
        .iter()
        .zip(hi)
        .any(|(a, b)| !(a.is_finite() && b.is_finite() && a < b))
    {
        bail_config!("box must satisfy lo < hi with finite corners, got {lo:?}..{hi:?}");
    }
    Ok(())
}

impl Density {
    pub fn uniform_box(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_box(&lo, &hi)?;
        Ok(Density::UniformBox { lo, hi })
    }

    /// Uniform on `[0, 1]^d`.
    pub fn unit_cube(dim: usize) -> Result<Self> {
        Self::uniform_box(vec![0.0; dim], vec![1.0; dim])
    }

    pub fn custom(
        lo: Vec<f64>,
        hi: Vec<f64>,
        bound: f64,
        evaluator: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        check_box(&lo, &hi)?;
        if !(bound.is_finite() && bound > 0.0) {
            bail_config!("density bound must be finite and positive, got {bound}");
        }
        Ok(Density::Custom {
            lo,
            hi,
            bound,
            evaluator: Arc::new(evaluator),
        })
    }

    pub fn dim(&self) -> usize {
        self.bounds().0.len()
    }

    /// The box containing the support.
    pub fn bounds(&self) -> (&[f64], &[f64]) {
        match self {
            Density::UniformBox { lo, hi } | Density::Custom { lo, hi, .. } => (lo, hi),
        }
    }

    pub fn box_volume(&self) -> f64 {
        let (lo, hi) = self.bounds();
        lo.iter().zip(hi).map(|(a, b)| b - a).product()
    }

    /// Density value at `x`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let (lo, hi) = self.bounds();
        let inside = x
            .iter()
            .zip(lo.iter().zip(hi))
            .all(|(v, (a, b))| *a <= *v && *v <= *b);
        if !inside {
            return 0.0;
        }
        match self {
            Density::UniformBox { .. } => 1.0 / self.box_volume(),
            Density::Custom { evaluator, .. } => evaluator(x),
        }
    }

    /// Upper bound on the density.
    pub fn sup(&self) -> f64 {
        match self {
            Density::UniformBox { .. } => 1.0 / self.box_volume(),
            Density::Custom { bound, .. } => *bound,
        }
    }
}
