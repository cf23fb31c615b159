use std::f64::consts::PI;

use num_complex::Complex64;

use super::InvariantError;
use crate::field::SampledField;

/// Principal-branch phase increments must stay strictly below this.
pub const PHASE_STEP_LIMIT: f64 = PI - 1e-6;

const ZERO_MODULUS: f64 = 1e-12;

/// Winding number of a closed nonvanishing curve sampled on a 1D grid: the sum of principal
/// phase increments between periodic neighbours, divided by `2 pi`.
pub fn winding_number(curve: &SampledField<Complex64>) -> Result<i64, InvariantError> {
    let grid = &curve.grid;
    if grid.dims() != 1 {
        return Err(InvariantError::WrongDimension { expected: 1, got: grid.dims() });
    }
    let values = &curve.values;
    if let Some((node, z)) = values.iter().enumerate().find(|(_, z)| !(z.norm() > ZERO_MODULUS)) {
        return Err(InvariantError::ZeroCrossing { node, modulus: z.norm() });
    }
    let mut total = 0.0;
    for (node, z) in values.iter().enumerate() {
        let next = values[(node + 1) % values.len()];
        let step = (next / z).arg();
        if step.abs() >= PHASE_STEP_LIMIT {
            return Err(InvariantError::InsufficientResolution { node, step });
        }
        total += step;
    }
    // The increments telescope to a multiple of 2 pi up to rounding.
    Ok((total / (2.0 * PI)).round() as i64)
}
