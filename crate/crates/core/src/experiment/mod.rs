//! Seeded Monte Carlo runs of E β_k^θ(P_n, r_n) over a radius law r_n = c·n^q,
//! log-log exponent fits, lower-bound audits and SVG rendering.

mod audit;
mod fit;
mod render;
mod run;
mod spec;

pub use audit::{lower_bound_audit, AuditReport, AuditRow};
pub use fit::{fit_exponent, fit_exponent_with_span, ExponentFit, MIN_DECADES};
pub use render::render_balls;
pub use run::{run_experiment, trial_cloud, ExperimentResult, ResultRow};
pub use spec::{BoxConfig, ExperimentConfig, ExperimentSpec, RadiusConfig};
