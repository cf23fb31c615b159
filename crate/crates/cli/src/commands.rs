use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use ktorus::banach::{
    self, c1_gap, default_c1_grid, l1_tail, series_term_norm, sin_fourier_partial,
    sin_series_l1_norm, spectral_radius_estimate, square_residual, sup_gap, CoeffSeq, Weight,
};
use ktorus::field::{write_csv, CsvValue, SampledField, TorusGrid};
use ktorus::funcalc::{apply_isely, hermitian_eigenvalues, PairMatrix};
use ktorus::invariants::{
    boundary_class, chern_number, k3_report, left_support, support_f, winding_number,
    InvariantError,
};
use ktorus::parse_expr;
use ktorus::rieffel::{
    assemble_p, build_isely, build_u_i, check_projection, check_prop_main1, check_rieffel,
    isely_closed_form, isely_scalar_data, Verdict,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::input::{self, InputError, InputResult};

/// A finished command: the JSON payload and whether every check passed.
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
}

fn outcome(passed: bool, report: Value) -> InputResult<Outcome> {
    Ok(Outcome { passed, report })
}

fn grid_error(e: InvariantError) -> InputError {
    InputError(e.to_string())
}

fn dump<T: CsvValue>(path: &Option<PathBuf>, field: &SampledField<T>) -> InputResult<()> {
    if let Some(path) = path {
        let mut out = BufWriter::new(create(path)?);
        write_csv(field, &mut out)?;
        out.flush()?;
    }
    Ok(())
}

fn create(path: &Path) -> InputResult<File> {
    File::create(path).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

/// Runs an invariant computation whose numerical failures are verification failures (exit 1),
/// not input errors.
fn invariant<T>(r: Result<T, InvariantError>) -> Result<T, Value> {
    r.map_err(|e| json!({ "error": e.to_string() }))
}

pub fn verify_isely() -> InputResult<Outcome> {
    let (pair, p) = build_isely();
    let rieffel = check_rieffel(&pair);
    let projection = check_projection(&p, true);
    let main1 = check_prop_main1(&isely_scalar_data());
    let (u, unitary) = build_u_i();
    let closed = p == isely_closed_form();
    let passed = rieffel.passed && projection.passed && main1.passed && unitary.passed && closed;
    outcome(
        passed,
        json!({
            "rieffel": rieffel,
            "projection": projection,
            "scalar_conditions": main1,
            "unitary": unitary,
            "matches_closed_form": closed,
            "p": p.to_strings(),
            "u": u.to_strings(),
        }),
    )
}

pub fn verify_rieffel(path: &Path) -> InputResult<Outcome> {
    let pair = input::read_datum(path)?.pair();
    let rieffel = check_rieffel(&pair);
    let p = assemble_p(&pair);
    let projection = check_projection(&p, false);
    let rank_one = pair.x0.trace() == ktorus::AlgebraElement::one(pair.n());
    outcome(
        rieffel.passed && projection.passed,
        json!({
            "variables": pair.n(),
            "rieffel": rieffel,
            "projection": projection,
            "rank_one": rank_one,
            "p": p.to_strings(),
        }),
    )
}

pub fn prop_main1(path: &Path) -> InputResult<Outcome> {
    let d = input::read_datum(path)?.scalar()?;
    let v: Verdict = check_prop_main1(&d);
    outcome(v.passed, json!({ "variables": d.n(), "scalar_conditions": v }))
}

pub fn chern(source: &str, n: usize, csv: &Option<PathBuf>) -> InputResult<Outcome> {
    let grid = TorusGrid::square(n)?;
    let field = input::projection_field(source, &grid)?;
    dump(csv, &field)?;
    Ok(match invariant(chern_number(&field)) {
        Ok(r) => Outcome { passed: true, report: json!({ "source": source, "chern": r }) },
        Err(e) => Outcome { passed: false, report: json!({ "source": source, "chern": e }) },
    })
}

/// One CSV row of the boundary computation.
struct BoundaryRow {
    f: f64,
    ell: ktorus::field::CMat2,
}

impl CsvValue for BoundaryRow {
    fn header() -> Vec<String> {
        let mut h = vec!["f".to_string(), "re_u".into(), "im_u".into()];
        h.extend(ktorus::field::CMat2::header().into_iter().map(|c| format!("l_{c}")));
        h
    }

    fn columns(&self) -> Vec<f64> {
        let u = Complex64::from_polar(1.0, 2.0 * PI * self.f);
        let mut c = vec![self.f, u.re, u.im];
        c.extend(self.ell.columns());
        c
    }
}

pub fn boundary(source: &str, n: usize, csv: &Option<PathBuf>) -> InputResult<Outcome> {
    let grid = TorusGrid::circle(n)?;
    let data = input::sampled_data(source, &grid)?;
    if csv.is_some() {
        let f = invariant(support_f(&data));
        if let Ok(f) = f {
            let ell = left_support(&data);
            let rows = SampledField {
                grid: grid.clone(),
                values: f.values.iter().zip(ell.values).map(|(&f, ell)| BoundaryRow { f, ell }).collect(),
            };
            dump(csv, &rows)?;
        }
    }
    Ok(match invariant(boundary_class(&data)) {
        Ok(r) => Outcome { passed: true, report: json!({ "source": source, "boundary": r }) },
        Err(e) => Outcome { passed: false, report: json!({ "source": source, "boundary": e }) },
    })
}

pub fn winding(expr: &str, n: usize, csv: &Option<PathBuf>) -> InputResult<Outcome> {
    let e = parse_expr(expr)?;
    if e.n() != 1 {
        return Err(InputError(format!("winding takes an expression in s1, r1; got {} variables", e.n())));
    }
    let grid = TorusGrid::circle(n)?;
    let curve = grid.sample(|x| e.eval(x));
    dump(csv, &curve)?;
    let min_modulus = curve.values.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    Ok(match invariant(winding_number(&curve)) {
        Ok(w) => Outcome {
            passed: true,
            report: json!({ "expr": e.to_string(), "grid": [n], "winding": w, "min_modulus": min_modulus }),
        },
        Err(err) => Outcome {
            passed: false,
            report: json!({ "expr": e.to_string(), "grid": [n], "winding": err }),
        },
    })
}

pub fn k3(n: usize, odd: usize, field_grid: usize, csv: &Option<PathBuf>) -> InputResult<Outcome> {
    TorusGrid::square(n)?;
    let odd = (odd > 0).then_some(odd);
    if csv.is_some() {
        let (u, _) = build_u_i();
        dump(csv, &TorusGrid::cube(field_grid)?.sample(|x| u.eval(x)))?;
    }
    let r = match k3_report(n, odd) {
        Ok(r) => r,
        Err(e @ InvariantError::Grid(_)) => return Err(grid_error(e)),
        Err(e) => return outcome(false, json!({ "error": e.to_string() })),
    };
    let identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let odd_ok = r.odd_integral.is_none_or(|v| (v - r.u_i_invariant as f64).abs() < 0.1);
    let passed = r.beta_matrix == identity
        && r.coordinate_windings == [1, 1, 1]
        && r.u_i_invariant == 1
        && odd_ok;
    outcome(passed, json!({ "k3": r, "odd_integral_agrees": odd_ok }))
}

pub fn funcalc(path: &Path) -> InputResult<Outcome> {
    let (u, v) = input::read_unitaries(path)?;
    let r = apply_isely(&u, &v)?;
    let eigenvalues = hermitian_eigenvalues(&r.p)?;
    let spread = eigenvalues.iter().map(|&l| l.abs().min((l - 1.0).abs())).fold(0.0, f64::max);
    let passed = r.idempotent_defect <= 1e-8 && r.hermitian_defect <= 1e-8 && spread <= 1e-8;
    outcome(
        passed,
        json!({
            "size": r.p.nrows(),
            "p": PairMatrix::from_matrix(&r.p),
            "idempotent_defect": r.idempotent_defect,
            "hermitian_defect": r.hermitian_defect,
            "trace": [r.trace.re, r.trace.im],
            "eigenvalues": eigenvalues,
            "eigenvalue_spread": spread,
        }),
    )
}

pub fn fourier(n: usize, alpha: f64, k_max: usize, csv: &Option<PathBuf>) -> InputResult<Outcome> {
    let w = Weight::new(alpha)?;
    let s = sin_fourier_partial(n);
    if let Some(path) = csv {
        let mut out = BufWriter::new(create(path)?);
        banach::write_coeff_csv(&s, &mut out)?;
        out.flush()?;
    }
    let tail = l1_tail(n);
    let telescoped = 2.0 / (PI * (2 * n + 1) as f64);
    let full = sin_series_l1_norm();
    let tail_ok = (tail - telescoped).abs() < 1e-12;
    let full_ok = (full - 4.0 / PI).abs() < 1e-12;
    let term = series_term_norm(n, w);
    let step = CoeffSeq::s_pow(1);
    let laplacian = CoeffSeq::from_pairs([
        (-1, Complex64::new(-1.0, 0.0)),
        (0, Complex64::new(2.0, 0.0)),
        (1, Complex64::new(-1.0, 0.0)),
    ]);
    let half = s.eval(0.5);
    outcome(
        tail_ok && full_ok,
        json!({
            "N": n,
            "alpha": alpha,
            "coefficients": s,
            "l1_norm": s.l1_norm(),
            "weighted_norm": s.weighted_norm(w),
            "l1_tail": tail,
            "l1_tail_telescoped": telescoped,
            "l1_tail_agrees": tail_ok,
            "series_l1_norm": full,
            "series_l1_norm_agrees": full_ok,
            "term_norm_at_N": term,
            "square_residual": if n >= 1 { json!(square_residual(n)) } else { Value::Null },
            "value_at_half": [half.re, half.im],
            "spectral_radius_s": spectral_radius_estimate(&step, w, k_max),
            "spectral_radius_laplacian": spectral_radius_estimate(&laplacian, w, k_max),
        }),
    )
}

pub fn c1gap(n: usize, grid: Option<usize>, csv: &Option<PathBuf>) -> InputResult<Outcome> {
    if n == 0 {
        return Err(InputError("--N must be at least 1".into()));
    }
    let grid = grid.unwrap_or_else(|| default_c1_grid(n));
    let g = TorusGrid::circle(grid)?;
    if csv.is_some() {
        let d = sin_fourier_partial(2 * n).sub(&sin_fourier_partial(n)).derivative();
        dump(csv, &g.sample(|x| d.eval(x[0])))?;
    }
    let gap = c1_gap(n, grid);
    let sup = sup_gap(n, grid);
    let bound = 2.0 / (PI * (2 * n + 1) as f64);
    outcome(
        gap > 0.5 && sup <= bound,
        json!({
            "N": n,
            "grid": [grid],
            "c1_gap": gap,
            "sup_gap": sup,
            "sup_bound": bound,
        }),
    )
}
