//! The exact commutative *-ring `C[Z^n]` with adjoined self-adjoint square roots
//! `r_i = (2 - s_i - s_i^{-1})^{1/2}`.
//!
//! Points of the torus are given in turns: `theta` corresponds to `exp(2 pi i theta)`.
//! The root evaluates to the nonnegative branch `2|sin(pi theta)|`.

mod element;
mod gauss;

pub use element::{AlgebraElement, Monomial};
pub use gauss::GaussRational;

/// Roots are tracked in a `u32` bitmask.
pub const MAX_VARS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },
    #[error("element is not invertible in the ring: {0}")]
    NotInvertible(String),
}
