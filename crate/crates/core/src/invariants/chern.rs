//! First Chern number of the range line bundle of a rank-one projection field on `T^2`, by the
//! lattice plaquette method: link variables between normalized range vectors of neighbouring
//! nodes, and the principal phase of each plaquette's loop product. The sum of plaquette phases
//! is an exact multiple of `2 pi`, so the result is an integer on any grid where no plaquette
//! phase is near `pi`.
//!
//! Orientation: the first grid axis is `theta`, the second `phi`. The sign is fixed so that the
//! Bott projections `P_I` and `P_L`, whose boundary class is `[exp(2 pi i theta)]`, have Chern
//! number `+1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::InvariantError;
use crate::field::{CMat2, SampledField};

/// Nodes must be within this of a rank-one projection.
pub const RANK_ONE_TOLERANCE: f64 = 1e-8;

const PI_MARGIN: f64 = 1e-6;
const MIN_LINK: f64 = 1e-12;

/// `+1` or `-1`, applied to `(1/2 pi) sum arg(loop)` with loops traversed
/// `(i,j) -> (i+1,j) -> (i+1,j+1) -> (i,j+1)`.
const ORIENTATION: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChernReport {
    pub chern: i64,
    pub grid: Vec<usize>,
    /// Largest `max(|P^2 - P|, |P - P*|, |tr P - 1|)` over nodes.
    pub max_projection_defect: f64,
    /// Largest plaquette phase modulus; values near `pi` mean the grid is too coarse.
    pub max_plaquette_phase: f64,
    /// `|sum / 2 pi - chern|` before rounding.
    pub distance_to_integer: f64,
}

fn range_vector(p: &CMat2) -> [Complex64; 2] {
    let c0 = p.column(0);
    let c1 = p.column(1);
    let n0 = c0[0].norm_sqr() + c0[1].norm_sqr();
    let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
    let (c, n) = if n0 >= n1 { (c0, n0) } else { (c1, n1) };
    let n = n.sqrt();
    [c[0] / n, c[1] / n]
}

fn inner(u: &[Complex64; 2], v: &[Complex64; 2]) -> Complex64 {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

pub fn chern_number(field: &SampledField<CMat2>) -> Result<ChernReport, InvariantError> {
    let grid = &field.grid;
    if grid.dims() != 2 {
        return Err(InvariantError::WrongDimension { expected: 2, got: grid.dims() });
    }
    let defects: Vec<f64> = field
        .values
        .par_iter()
        .map(|p| p.projection_defect().max((p.trace() - 1.0).norm()))
        .collect();
    let mut max_defect = 0.0f64;
    for (node, &d) in defects.iter().enumerate() {
        if !(d <= RANK_ONE_TOLERANCE) {
            return Err(InvariantError::NotRankOne { node, defect: d });
        }
        max_defect = max_defect.max(d);
    }
    let vectors: Vec<[Complex64; 2]> = field.values.par_iter().map(range_vector).collect();
    let (n0, n1) = (grid.sizes()[0] as isize, grid.sizes()[1] as isize);
    let vec_at = |i: isize, j: isize| &vectors[grid.index(&[i, j])];

    let phases: Vec<Result<f64, InvariantError>> = (0..grid.len())
        .into_par_iter()
        .map(|node| {
            let i = node as isize / n1;
            let j = node as isize % n1;
            let corners = [vec_at(i, j), vec_at(i + 1, j), vec_at(i + 1, j + 1), vec_at(i, j + 1)];
            let mut loop_product = Complex64::new(1.0, 0.0);
            for k in 0..4 {
                let link = inner(corners[k], corners[(k + 1) % 4]);
                if link.norm() < MIN_LINK {
                    return Err(InvariantError::DegenerateLink { node });
                }
                loop_product *= link / link.norm();
            }
            let phase = loop_product.arg();
            if PI - phase.abs() < PI_MARGIN {
                return Err(InvariantError::AmbiguousPlaquette { node });
            }
            Ok(phase)
        })
        .collect();
    debug_assert_eq!(phases.len() as isize, n0 * n1);

    // Fixed-order summation keeps reports reproducible.
    let mut total = 0.0;
    let mut max_phase = 0.0f64;
    for p in phases {
        let p = p?;
        total += p;
        max_phase = max_phase.max(p.abs());
    }
    let raw = ORIENTATION * total / (2.0 * PI);
    let chern = raw.round();
    Ok(ChernReport {
        chern: chern as i64,
        grid: grid.sizes().to_vec(),
        max_projection_defect: max_defect,
        max_plaquette_phase: max_phase,
        distance_to_integer: (raw - chern).abs(),
    })
}
