//! Point clouds, metric primitives and random point processes.

mod density;
mod graph;
mod miniball;
mod point_cloud;
mod sampling;

pub use density::Density;
pub use graph::{geometric_graph, GeometricGraph};
pub(crate) use miniball::miniball_unchecked;
pub use miniball::{miniball, Ball};
pub use point_cloud::{dist, dist2, PointCloud};
pub(crate) use sampling::uniform_in_ball;
pub use sampling::{ball_volume, sample_binomial, sample_poisson};
