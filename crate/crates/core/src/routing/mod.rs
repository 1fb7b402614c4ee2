//! Geodesic routing: all-pairs hop distances by min-plus powering,
//! equal-split redistribution vectors and the flow fixed point.
//!
//! Flow toward a destination `w` that sits at vertex `v` is divided equally
//! among the neighbors of `v` one hop closer to `w`. With demand matrix `S`
//! the accumulated flow is `F = S + wS + w^2 S + ...`, the fixed point of
//! `F <- S + w(F)`, where `w` applies the redistribution vectors.

mod apsp;
mod congestion;
mod flow;
mod oracle;
mod redistribution;
pub mod rle;

use thiserror::Error;

pub use apsp::{apsp, min_plus_step, DistanceMatrix, MinPlusStep, DENSE_THRESHOLD, UNREACHABLE};
pub use congestion::{congestion, congestion_with, CongestionReport, EdgeFlow, MemoryTelemetry};
pub use flow::{solve_flow, Demand, DemandMatrix, FlowState, FlowSweep, UniformDemand, FIXED_POINT_TOLERANCE};
pub use oracle::{oracle_flow, OracleFlow};
pub use redistribution::{build_redistribution, RedistributionTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RoutingError {
    #[error("dimension mismatch: matrix has {matrix} vertices, graph has {graph}")]
    DimensionMismatch { matrix: usize, graph: usize },
    #[error("graph is disconnected ({components} components); route within the largest component instead")]
    DisconnectedGraph { components: usize },
    #[error("graph with {0} vertices exceeds the 16-bit distance range")]
    TooLarge(usize),
    #[error("demand from {vertex} to {destination} must be nonnegative (and zero on the diagonal)")]
    InvalidDemand { destination: usize, vertex: usize },
    #[error("flow toward {destination} did not reach a fixed point within {iterations} iterations")]
    NonConvergence { destination: usize, iterations: usize },
    #[error("{t} is unreachable from {s}")]
    Unreachable { s: usize, t: usize },
    #[error("source and destination must differ (both {0})")]
    SameEndpoints(usize),
}
