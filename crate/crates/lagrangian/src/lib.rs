//! Lagrangian maximization over the shattering hypergraph `H(k, d)`.
//!
//! Vertices are binary `k`-patterns; `d` of them form an edge when the
//! `k x d` matrix with those patterns as columns contains all `2^d` rows.
//! Edge membership is always computed on demand; the edge set is never
//! materialized.
//!
//! The optimizer interleaves multiplicative (replicator) ascent with
//! support-reduction moves that shift weight off a pair lying in no common
//! edge, and can snap the final weights to a rational grid to produce an
//! exact achievability certificate.

mod estimate;
mod eval;
mod optimize;

pub use estimate::{c_estimate, sandwich_check, SandwichReport};
pub use eval::{is_edge, lagrangian_value, lagrangian_value_exact};
pub use optimize::{
    maximize_lagrangian, LagrangianResult, OptimizerConfig, RationalCertificate, VertexRestriction,
    WeightVector,
};
