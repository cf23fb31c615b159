//! JSON inputs and built-in data sets.

use std::fs;
use std::path::Path;

use ktorus::field::{CMat2, SampledField, TorusGrid};
use ktorus::funcalc::{CMatrix, PairMatrix};
use ktorus::invariants::{build_loring, loring_profile, SampledScalarData};
use ktorus::rieffel::{
    build_isely, constant_trivial_data, isely_scalar_data, trivial_type_data, MatrixAlg,
    RieffelPair, ScalarData,
};
use ktorus::{parse_expr, parse_expr_in, AlgebraElement};
use serde::Deserialize;

/// Bad input: exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub type InputResult<T> = Result<T, InputError>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> InputResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

type Entries = [[String; 2]; 2];

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum DataFile {
    Scalar {
        a: String,
        b: String,
        alpha: String,
        beta: String,
        gamma: String,
        vars: Option<usize>,
    },
    Pair {
        x0: Entries,
        x1: Entries,
        vars: Option<usize>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    p: Entries,
}

/// Parses all expressions in one shared variable count: `vars` if given, else the largest index.
fn parse_all(texts: &[&str], vars: Option<usize>) -> InputResult<Vec<AlgebraElement>> {
    let n = match vars {
        Some(n) => n,
        None => {
            let mut n = 1;
            for t in texts {
                n = n.max(parse_expr(t).map_err(|e| InputError(format!("{t:?}: {e}")))?.n());
            }
            n
        }
    };
    texts.iter().map(|t| parse_expr_in(t, n).map_err(|e| InputError(format!("{t:?}: {e}")))).collect()
}

fn matrix(e: &[AlgebraElement]) -> InputResult<MatrixAlg> {
    Ok(MatrixAlg::new([[e[0].clone(), e[1].clone()], [e[2].clone(), e[3].clone()]])?)
}

/// A Rieffel datum read from JSON, in either scalar or pair form.
pub enum Datum {
    Scalar(ScalarData),
    Pair(RieffelPair),
}

impl Datum {
    pub fn pair(&self) -> RieffelPair {
        match self {
            Datum::Scalar(d) => d.pair(),
            Datum::Pair(p) => p.clone(),
        }
    }

    pub fn scalar(&self) -> InputResult<ScalarData> {
        match self {
            Datum::Scalar(d) => Ok(d.clone()),
            Datum::Pair(p) => ScalarData::from_pair(p).ok_or_else(|| {
                InputError("pair is not of the form X0 = [[a, b], [b*, 1-a]], X1 = [[alpha, beta], [gamma, -alpha]]".into())
            }),
        }
    }
}

pub fn read_datum(path: &Path) -> InputResult<Datum> {
    match read_json::<DataFile>(path)? {
        DataFile::Scalar { a, b, alpha, beta, gamma, vars } => {
            let e = parse_all(&[&a, &b, &alpha, &beta, &gamma], vars)?;
            Ok(Datum::Scalar(ScalarData::new(
                e[0].clone(),
                e[1].clone(),
                e[2].clone(),
                e[3].clone(),
                e[4].clone(),
            )?))
        }
        DataFile::Pair { x0, x1, vars } => {
            let texts: Vec<&str> = x0.iter().chain(&x1).flatten().map(String::as_str).collect();
            let e = parse_all(&texts, vars)?;
            Ok(Datum::Pair(RieffelPair::new(matrix(&e[..4])?, matrix(&e[4..])?)?))
        }
    }
}

/// A projection field on the given 2D grid: a built-in name or a JSON file `{"p": [[..], [..]]}`
/// with expressions in two variables.
pub fn projection_field(source: &str, grid: &TorusGrid) -> InputResult<SampledField<CMat2>> {
    match source {
        "isely" | "isely-complement" => {
            let (_, p) = build_isely();
            let field = grid.sample(|x| p.eval(x));
            Ok(if source == "isely" { field } else { field.map(|m| CMat2::identity() - *m) })
        }
        "loring" => Ok(build_loring(grid)?.field),
        "const-e11" => Ok(grid.sample(|_| CMat2::e11())),
        path => {
            let file: FieldFile = read_json(Path::new(path))?;
            let texts: Vec<&str> = file.p.iter().flatten().map(String::as_str).collect();
            let m = matrix(&parse_all(&texts, Some(2))?)?;
            Ok(grid.sample(|x| m.eval(x)))
        }
    }
}

/// Scalar data sampled on a circle grid: a built-in name or a JSON datum in one variable.
pub fn sampled_data(source: &str, grid: &TorusGrid) -> InputResult<SampledScalarData> {
    let exact = match source {
        "loring" => return Ok(loring_profile(grid)?),
        "isely" => isely_scalar_data(),
        "trivial" => trivial_type_data(),
        "constant-trivial" => constant_trivial_data(),
        path => read_datum(Path::new(path))?.scalar()?,
    };
    if exact.n() != 1 {
        return Err(InputError(format!("boundary data must be in one variable, got {}", exact.n())));
    }
    Ok(SampledScalarData::from_exact(&exact, grid)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitaryFile {
    u: PairMatrix,
    v: PairMatrix,
}

pub fn read_unitaries(path: &Path) -> InputResult<(CMatrix, CMatrix)> {
    let f: UnitaryFile = read_json(path)?;
    Ok((f.u.to_matrix()?, f.v.to_matrix()?))
}
