use std::f64::consts::PI;

use num_complex::Complex64;

use super::{InvariantError, SampledScalarData, ScalarSample};
use crate::field::{CMat2, SampledField, TorusGrid};

/// Loring-type data with `a(theta) = cos^2(pi theta)`: decreasing from 1 to 0 on `[0, 1/2]`,
/// increasing back to 1 on `[1/2, 1]`. `b = sqrt(a - a^2)` on the first half, `beta` on the
/// second, each zero elsewhere.
pub fn loring_sample(theta: f64) -> ScalarSample {
    let t = theta.rem_euclid(1.0);
    let c = (PI * t).cos();
    let a = c * c;
    let w = (a - a * a).max(0.0).sqrt();
    let (b, beta) = if t <= 0.5 { (w, 0.0) } else { (0.0, w) };
    let z = Complex64::new(0.0, 0.0);
    ScalarSample { a: a.into(), b: b.into(), alpha: z, beta: beta.into(), gamma: z }
}

/// `P_L(theta, phi) = [[a, b + beta e(phi)], [b + beta e(-phi)], 1 - a]]` at one point.
pub fn loring_projection(theta: f64, phi: f64) -> CMat2 {
    let d = loring_sample(theta);
    let e = Complex64::from_polar(1.0, 2.0 * PI * phi);
    CMat2([[d.a, d.b + d.beta * e], [d.b + d.beta * e.conj(), 1.0 - d.a]])
}

pub fn loring_profile(grid: &TorusGrid) -> Result<SampledScalarData, InvariantError> {
    if grid.dims() != 1 {
        return Err(InvariantError::WrongDimension { expected: 1, got: grid.dims() });
    }
    Ok(SampledScalarData { grid: grid.clone(), samples: grid.sample(|p| loring_sample(p[0])).values })
}

#[derive(Debug, Clone)]
pub struct LoringData {
    /// `P_L` on the 2D grid.
    pub field: SampledField<CMat2>,
    /// `(a, b, alpha, beta, gamma)` on the `theta` axis of the grid.
    pub data: SampledScalarData,
}

pub fn build_loring(grid: &TorusGrid) -> Result<LoringData, InvariantError> {
    if grid.dims() != 2 {
        return Err(InvariantError::WrongDimension { expected: 2, got: grid.dims() });
    }
    let field = grid.sample(|p| loring_projection(p[0], p[1]));
    let axis = TorusGrid::with_origin(&grid.sizes()[..1], &grid.origin()[..1])?;
    let data = loring_profile(&axis)?;
    Ok(LoringData { field, data })
}
