//! Functional calculus for commuting unitary matrices: the projection `P_I(U, V)` obtained by
//! substituting `U`, `V` for `s_1`, `s_2` and `(2 - U - U*)^{1/2}` for `r_1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

pub type CMatrix = DMatrix<Complex64>;

pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero.
pub const EIGEN_CLAMP: f64 = 1e-10;
pub const UNITARY_TOLERANCE: f64 = 1e-10;
pub const COMMUTATION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FuncalcError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrices have sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix is not Hermitian (|H - H*| = {0:e})")]
    NotHermitian(f64),
    #[error("eigenvalue {0:e} is below -{EIGEN_CLAMP:e}")]
    NegativeEigenvalue(f64),
    #[error("matrix is not unitary (|U*U - 1| = {0:e})")]
    NotUnitary(f64),
    #[error("U and V do not commute (|UV - VU| = {0:e})")]
    NotCommuting(f64),
    #[error("row {0} has a different length")]
    Ragged(usize),
}

/// Frobenius norm.
pub fn norm(m: &CMatrix) -> f64 {
    m.norm()
}

fn square_size(m: &CMatrix) -> Result<usize, FuncalcError> {
    if m.nrows() == m.ncols() {
        Ok(m.nrows())
    } else {
        Err(FuncalcError::NotSquare { rows: m.nrows(), cols: m.ncols() })
    }
}

pub fn check_unitary(u: &CMatrix) -> Result<f64, FuncalcError> {
    let n = square_size(u)?;
    let defect = norm(&(u.adjoint() * u - CMatrix::identity(n, n)));
    if defect <= UNITARY_TOLERANCE {
        Ok(defect)
    } else {
        Err(FuncalcError::NotUnitary(defect))
    }
}

fn hermitian_part(h: &CMatrix) -> Result<CMatrix, FuncalcError> {
    square_size(h)?;
    let residual = norm(&(h - h.adjoint()));
    if residual > HERMITIAN_TOLERANCE {
        return Err(FuncalcError::NotHermitian(residual));
    }
    Ok((h + h.adjoint()).scale(0.5))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>, FuncalcError> {
    let mut ev: Vec<f64> = hermitian_part(h)?.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// The positive square root by spectral decomposition.
pub fn sqrt_psd(h: &CMatrix) -> Result<CMatrix, FuncalcError> {
    let eig = hermitian_part(h)?.symmetric_eigen();
    let mut roots = Vec::with_capacity(eig.eigenvalues.len());
    for &l in eig.eigenvalues.iter() {
        if l < -EIGEN_CLAMP {
            return Err(FuncalcError::NegativeEigenvalue(l));
        }
        roots.push(Complex64::new(l.max(0.0).sqrt(), 0.0));
    }
    let q = &eig.eigenvectors;
    Ok(q * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(roots)) * q.adjoint())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IselyProjection {
    /// The `2m x 2m` block matrix.
    pub p: CMatrix,
    /// `|P^2 - P|`.
    pub idempotent_defect: f64,
    /// `|P - P*|`.
    pub hermitian_defect: f64,
    pub trace: Complex64,
}

/// With `A = 2 - U - U*`, `B = 2 - V - V*`:
/// `P = 1/16 [[16 - AB, -i(U - U*)B + 2(V - V*)A^{1/2}], [adjoint, AB]]`.
pub fn apply_isely(u: &CMatrix, v: &CMatrix) -> Result<IselyProjection, FuncalcError> {
    let m = square_size(u)?;
    if square_size(v)? != m {
        return Err(FuncalcError::SizeMismatch(m, v.nrows()));
    }
    check_unitary(u)?;
    check_unitary(v)?;
    let comm = norm(&(u * v - v * u));
    if comm > COMMUTATION_TOLERANCE {
        return Err(FuncalcError::NotCommuting(comm));
    }
    let id = CMatrix::identity(m, m);
    let two = id.scale(2.0);
    let a = &two - u - u.adjoint();
    let b = &two - v - v.adjoint();
    let root_a = sqrt_psd(&a)?;
    let i = Complex64::new(0.0, 1.0);
    let ab = &a * &b;
    let p11 = id.scale(16.0) - &ab;
    let p12 = (u - u.adjoint()) * &b * (-i) + (v - v.adjoint()) * &root_a * Complex64::new(2.0, 0.0);
    let p21 = p12.adjoint();
    let mut p = CMatrix::zeros(2 * m, 2 * m);
    p.view_mut((0, 0), (m, m)).copy_from(&p11);
    p.view_mut((0, m), (m, m)).copy_from(&p12);
    p.view_mut((m, 0), (m, m)).copy_from(&p21);
    p.view_mut((m, m), (m, m)).copy_from(&ab);
    let p = p.unscale(16.0);
    Ok(IselyProjection {
        idempotent_defect: norm(&(&p * &p - &p)),
        hermitian_defect: norm(&(&p - p.adjoint())),
        trace: p.trace(),
        p,
    })
}

/// `W (+) W`.
pub fn block_diag2(w: &CMatrix) -> CMatrix {
    let m = w.nrows();
    let mut out = CMatrix::zeros(2 * m, 2 * m);
    out.view_mut((0, 0), (m, m)).copy_from(w);
    out.view_mut((m, m), (m, m)).copy_from(w);
    out
}

/// A matrix as rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct PairMatrix(pub Vec<Vec<[f64; 2]>>);

impl PairMatrix {
    pub fn to_matrix(&self) -> Result<CMatrix, FuncalcError> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        if let Some(bad) = self.0.iter().position(|r| r.len() != cols) {
            return Err(FuncalcError::Ragged(bad));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| Complex64::new(self.0[i][j][0], self.0[i][j][1])))
    }

    pub fn from_matrix(m: &CMatrix) -> Self {
        Self(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        )
    }
}
