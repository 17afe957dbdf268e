//! Čech filtrations, persistence diagrams and (persistent) Betti numbers.

mod betti;
mod diagram;
mod field;
mod filtration;
mod oracle;
mod reduction;

pub use betti::{betti, persistent_betti};
pub use diagram::{bottleneck_distance, Interval, PersistenceDiagram};
pub use field::FieldSpec;
pub(crate) use filtration::cech_filtration;
pub use filtration::{
    build_cech_filtration, build_cech_filtration_forced, FilteredComplex, Simplex, DEFAULT_DIM_CAP,
};
pub use oracle::{betti_oracle, persistent_betti_oracle, ORACLE_MAX_POINTS};
pub use reduction::compute_persistence;
