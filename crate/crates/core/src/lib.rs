//! Persistent homology of random Čech complexes.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: point clouds, smallest enclosing balls, geometric graphs
//!   and binomial/Poisson samplers.
//! * [`persistence`]: Čech filtrations, boundary-matrix reduction over Z/pZ,
//!   Betti and θ-persistent Betti numbers, plus an independent rank oracle.
//! * [`properties`]: finite geometric (subset) properties, their counts over
//!   point clouds and Monte Carlo estimates of their limiting constants.
//! * [`witness`]: point sets carrying θ-persistent cycles, their
//!   construction by barycentric subdivision, perturbation checks and
//!   randomized search for the minimal support size.
//! * [`experiment`]: seeded Monte Carlo runs of E β_k^θ over a radius law,
//!   log-log exponent fits, lower-bound audits and SVG rendering.

/// Version of this library, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod error;
pub mod experiment;
pub mod geometry;
pub mod persistence;
pub mod properties;
pub mod rng;
pub mod stats;
pub mod witness;

pub use error::{Error, Result};
pub use experiment::{ExperimentConfig, ExperimentResult, ExperimentSpec};
pub use geometry::{Ball, Density, GeometricGraph, PointCloud};
pub use persistence::{FieldSpec, FilteredComplex, Interval, PersistenceDiagram};
pub use properties::{PropertyDescriptor, RadiusLaw, SubsetPropertyDescriptor};
pub use witness::{CycleWitness, MBracket};
