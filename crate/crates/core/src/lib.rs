//! Rieffel projections over tori, checked exactly in a Laurent *-ring with adjoined square
//! roots, together with the grid numerics (winding numbers, lattice Chern numbers, the
//! boundary map) and weighted `l^1` diagnostics that go with them.

pub mod algebra;
pub mod banach;
pub mod expr;
pub mod field;
pub mod funcalc;
pub mod invariants;
pub mod rieffel;

pub use algebra::{AlgebraElement, AlgebraError, GaussRational, Monomial};
pub use expr::{parse_expr, parse_expr_in, ParseError};
