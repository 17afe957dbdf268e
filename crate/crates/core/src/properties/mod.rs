//! Finite geometric (subset) properties, their counts over point clouds and
//! Monte Carlo estimates of their limiting behaviour.

mod count;
mod descriptor;
mod enumerate;
mod montecarlo;
mod small_graph;

pub use count::{component_count, count_property, subset_count};
pub use descriptor::{
    sep_indicator, Context, PropertyDescriptor, PropertyKind, SubsetPropertyDescriptor,
};
pub use montecarlo::{
    convergence_diagnostic, diagnostic_csv, estimate_mu, palm_check, DiagnosticRow, Estimate,
    PalmCheck, RadiusLaw, AGREEMENT_SIGMAS,
};
pub use small_graph::SmallGraph;
