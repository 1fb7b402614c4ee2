//! Random graph ensembles, geodesic-routing traffic flows and congestion
//! measurements.
//!
//! The pipeline for triangulation ensembles is
//! [`pointgen`] → [`delaunay`] → [`routing`]; the other random families live
//! in [`ensembles`]. [`metrics`] holds degree statistics, closed-form
//! reference values and the experiment sweep.
//!
//! Numeric code is generic over the scalar type; the aliases below fix the
//! common `f64` instantiations.

pub mod delaunay;
pub mod density;
pub mod ensembles;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod pointgen;
pub mod rng;
pub mod routing;
pub mod scalar;

pub use graph::{Graph, GraphError};

/// Density model with `f64` radial maps.
pub type DensityModel = density::DensityModel<f64>;
/// Postfix radial map over `f64`.
pub type RadialMap = density::RadialMap<f64>;
/// Flow state in `f64`.
pub type FlowState = routing::FlowState<f64>;
/// Congestion report in `f64`.
pub type CongestionReport = routing::CongestionReport<f64>;
/// Exact rational flow state, for small reference graphs.
pub type ExactFlowState = routing::FlowState<num_rational::BigRational>;
/// Exact rational congestion report.
pub type ExactCongestionReport = routing::CongestionReport<num_rational::BigRational>;
