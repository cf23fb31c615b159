//! Integer invariants computed on torus grids: winding numbers, lattice Chern numbers of
//! rank-one projection fields, the boundary map of a Rieffel pair over the circle, and the
//! generator report for the 3-torus.

mod boundary;
mod chern;
mod k3;
mod loring;
mod winding;

pub use boundary::{
    boundary_class, jump_tolerance, left_support, support_f, BoundaryReport, SampledScalarData, ScalarSample,
    SupportShape, EPS_SUPPORT, MAIN1_TOLERANCE,
};
pub use chern::{chern_number, ChernReport, RANK_ONE_TOLERANCE};
pub use k3::{
    evaluation_map, isely_on_t3, k3_report, odd_winding_integral, symbolic_evaluation_map, Face,
    K3Report,
};
pub use loring::{build_loring, loring_profile, loring_projection, loring_sample, LoringData};
pub use winding::{winding_number, PHASE_STEP_LIMIT};

use crate::field::GridError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("expected a {expected}-dimensional grid, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("curve vanishes at node {node} (|value| = {modulus:e})")]
    ZeroCrossing { node: usize, modulus: f64 },
    #[error("phase step {step:.4} at node {node} is not below the limit; refine the grid")]
    InsufficientResolution { node: usize, step: f64 },
    #[error("field is not a rank-one projection at node {node} (defect {defect:e})")]
    NotRankOne { node: usize, defect: f64 },
    #[error("plaquette at node {node} has phase within tolerance of pi; refine the grid")]
    AmbiguousPlaquette { node: usize },
    #[error("neighbouring eigenvectors are orthogonal at node {node}; refine the grid")]
    DegenerateLink { node: usize },
    #[error("the two branch formulas for f disagree at node {node} by {gap:e}")]
    BranchDisagreement { node: usize, gap: f64 },
    #[error("input is not a non-trivial rank-one Rieffel datum: {0}")]
    NotRieffel(String),
    #[error("X0 l(X1) is not self-adjoint at node {node} (residual {residual:e})")]
    NotSelfAdjoint { node: usize, residual: f64 },
    #[error("exp(2 pi i f) jumps by {jump:e} at node {node}, tolerance {tolerance:e}")]
    Discontinuous { node: usize, jump: f64, tolerance: f64 },
}
