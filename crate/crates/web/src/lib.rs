//! Browser bindings for three demo operations. Each returns a JSON string.
//!
//! The `*_json` functions are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use std::f64::consts::PI;

use ktorus::banach::{c1_gap, default_c1_grid, l1_tail, series_term_norm, sin_fourier_partial, sup_gap, Weight};
use ktorus::field::{CMat2, SampledField, TorusGrid};
use ktorus::invariants::{
    boundary_class, build_loring, chern_number, loring_profile, support_f, SampledScalarData,
};
use ktorus::rieffel::{build_isely, constant_trivial_data, isely_scalar_data, trivial_type_data};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn check_grid(n: usize, max: usize) -> Result<(), String> {
    if n > max {
        return Err(format!("grid must be at most {max}"));
    }
    Ok(())
}

fn projection_field(source: &str, grid: &TorusGrid) -> Result<SampledField<CMat2>, String> {
    match source {
        "isely" => {
            let (_, p) = build_isely();
            Ok(grid.sample(|x| p.eval(x)))
        }
        "loring" => build_loring(grid).map(|d| d.field).map_err(|e| e.to_string()),
        other => Err(format!("unknown projection {other:?}")),
    }
}

/// Heat map of `P_11` and `|P_12|` on an `n x n` grid, row-major in `theta`, plus the Chern number.
pub fn projection_json(source: &str, n: usize) -> Result<String, String> {
    check_grid(n, 512)?;
    let grid = TorusGrid::square(n).map_err(|e| e.to_string())?;
    let field = projection_field(source, &grid)?;
    let report = chern_number(&field).map_err(|e| e.to_string())?;
    let p11: Vec<f64> = field.values.iter().map(|m| m.0[0][0].re).collect();
    let p12: Vec<f64> = field.values.iter().map(|m| m.0[0][1].norm()).collect();
    Ok(json!({ "n": n, "p11": p11, "p12_abs": p12, "chern": report }).to_string())
}

fn scalar_data(source: &str, grid: &TorusGrid) -> Result<SampledScalarData, String> {
    let exact = match source {
        "loring" => return loring_profile(grid).map_err(|e| e.to_string()),
        "isely" => isely_scalar_data(),
        "trivial" => trivial_type_data(),
        "constant-trivial" => constant_trivial_data(),
        other => return Err(format!("unknown data {other:?}")),
    };
    SampledScalarData::from_exact(&exact, grid).map_err(|e| e.to_string())
}

/// The eigenvalue curve `f` on the circle and the boundary report.
pub fn boundary_json(source: &str, n: usize) -> Result<String, String> {
    check_grid(n, 4096)?;
    let grid = TorusGrid::circle(n).map_err(|e| e.to_string())?;
    let data = scalar_data(source, &grid)?;
    let f = support_f(&data).map_err(|e| e.to_string())?;
    let report = boundary_class(&data).map_err(|e| e.to_string())?;
    Ok(json!({ "n": n, "f": f.values, "boundary": report }).to_string())
}

/// `S_N` against `|sin(pi theta)|` on `samples` points, with the norm diagnostics.
pub fn fourier_json(n: usize, samples: usize) -> Result<String, String> {
    if n == 0 || n > 2000 {
        return Err("N must be between 1 and 2000".into());
    }
    check_grid(samples, 4096)?;
    let s = sin_fourier_partial(n);
    let theta: Vec<f64> = (0..samples).map(|i| i as f64 / samples as f64).collect();
    let partial: Vec<f64> = theta.iter().map(|&t| s.eval(t).re).collect();
    let target: Vec<f64> = theta.iter().map(|&t| (PI * t).sin().abs()).collect();
    let w = Weight::new(1.0).map_err(|e| e.to_string())?;
    let terms: Vec<f64> = (1..=n.min(64)).map(|k| series_term_norm(k, w)).collect();
    let grid = default_c1_grid(n);
    Ok(json!({
        "N": n,
        "theta": theta,
        "partial": partial,
        "target": target,
        "l1_tail": l1_tail(n),
        "sup_gap": sup_gap(n, grid),
        "c1_gap": c1_gap(n, grid),
        "term_norms": terms,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn projection(source: &str, n: usize) -> Result<String, JsValue> {
    projection_json(source, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn boundary(source: &str, n: usize) -> Result<String, JsValue> {
    boundary_json(source, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fourier(n: usize, samples: usize) -> Result<String, JsValue> {
    fourier_json(n, samples).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn heat_maps_carry_chern_one() {
        for source in ["isely", "loring"] {
            let v = parse(projection_json(source, 48).unwrap());
            assert_eq!(v["chern"]["chern"], 1);
            assert_eq!(v["p11"].as_array().unwrap().len(), 48 * 48);
        }
        assert!(projection_json("other", 16).is_err());
        assert!(projection_json("isely", 4096).is_err());
    }

    #[test]
    fn boundary_curves() {
        let v = parse(boundary_json("isely", 128).unwrap());
        assert_eq!(v["boundary"]["boundary"], 1);
        assert_eq!(v["f"].as_array().unwrap().len(), 128);
        let v = parse(boundary_json("trivial", 128).unwrap());
        assert_eq!(v["boundary"]["boundary"], 0);
    }

    #[test]
    fn fourier_curves() {
        let v = parse(fourier_json(8, 64).unwrap());
        let partial = v["partial"].as_array().unwrap();
        let target = v["target"].as_array().unwrap();
        let err = partial
            .iter()
            .zip(target)
            .map(|(a, b)| (a.as_f64().unwrap() - b.as_f64().unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(err <= v["l1_tail"].as_f64().unwrap() + 1e-12);
        assert!(v["c1_gap"].as_f64().unwrap() > 0.5);
        assert!(fourier_json(0, 64).is_err());
    }
}
