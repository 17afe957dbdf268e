use crate::error::{bail_arg, Result};
use crate::geometry::PointCloud;

use super::field::FieldSpec;
use super::filtration::cech_filtration;
use super::reduction::compute_persistence;

/// Betti number β_k of the Čech complex of `points` at radius `r`.
pub fn betti(points: &PointCloud, r: f64, k: usize, field: FieldSpec) -> Result<usize> {
    if !(r >= 0.0) || !r.is_finite() {
        bail_arg!("radius must be finite and nonnegative, got {r}");
    }
    let complex = cech_filtration(points, r, k + 1);
    Ok(compute_persistence(&complex, field).betti_at(k, r))
}

/// θ-persistent Betti number: the rank of H_k(Čech_r → Čech_{θr}).
///
/// A class dying exactly at `θ·r` does not count, since the closed complex at
/// `θ·r` already contains the simplex that kills it.
pub fn persistent_betti(
    points: &PointCloud,
    r: f64,
    theta: f64,
    k: usize,
    field: FieldSpec,
) -> Result<usize> {
    if !(theta >= 1.0) || !theta.is_finite() {
        bail_arg!("theta must be finite and at least 1, got {theta}");
    }
    if !(r >= 0.0) || !r.is_finite() {
        bail_arg!("radius must be finite and nonnegative, got {r}");
    }
    let outer = theta * r;
    let complex = cech_filtration(points, outer, k + 1);
    Ok(compute_persistence(&complex, field).persistent_rank(k, r, outer))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PointCloud {
        PointCloud::from_points(2, &[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]).unwrap()
    }

    #[test]
    fn triangle_queries() {
        let f = FieldSpec::default();
        assert_eq!(betti(&triangle(), 0.55, 1, f).unwrap(), 1);
        assert_eq!(betti(&triangle(), 0.6, 1, f).unwrap(), 0);
        assert_eq!(betti(&triangle(), 0.4, 0, f).unwrap(), 3);
        assert_eq!(betti(&triangle(), 0.5, 0, f).unwrap(), 1);
        assert_eq!(persistent_betti(&triangle(), 0.5, 1.1, 1, f).unwrap(), 1);
        assert_eq!(persistent_betti(&triangle(), 0.5, 1.2, 1, f).unwrap(), 0);
        assert!(persistent_betti(&triangle(), 0.5, 0.9, 1, f).is_err());
        assert!(betti(&triangle(), -0.1, 0, f).is_err());
    }

    #[test]
    fn zero_radius() {
        let f = FieldSpec::default();
        let p = PointCloud::from_points(1, &[[0.0], [0.0], [1.0]]).unwrap();
        assert_eq!(betti(&p, 0.0, 0, f).unwrap(), 2);
        assert_eq!(persistent_betti(&p, 0.0, 2.0, 1, f).unwrap(), 0);
    }

    #[test]
    fn square_corners() {
        let sq =
            PointCloud::from_points(2, &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let f = FieldSpec::default();
        assert_eq!(betti(&sq, 0.55, 1, f).unwrap(), 1);
        assert_eq!(betti(&sq, 0.71, 1, f).unwrap(), 0);
        assert_eq!(persistent_betti(&sq, 0.5, 1.4, 1, f).unwrap(), 1);
        assert_eq!(persistent_betti(&sq, 0.5, 1.42, 1, f).unwrap(), 0);
    }
}
