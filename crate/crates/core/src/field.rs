//! Uniform periodic grids on `T^1..T^3` and fields sampled on them.

use std::io::{self, Write};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub const MIN_GRID_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    #[error("grid must have 1 to 3 dimensions, got {0}")]
    Dimension(usize),
    #[error("grid size {0} below minimum {MIN_GRID_SIZE}")]
    TooSmall(usize),
}

/// Nodes at `origin + j / N` (in turns) along each axis, indices taken mod `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusGrid {
    sizes: Vec<usize>,
    origin: Vec<f64>,
}

impl TorusGrid {
    pub fn new(sizes: &[usize]) -> Result<Self, GridError> {
        Self::with_origin(sizes, &vec![0.0; sizes.len()])
    }

    pub fn with_origin(sizes: &[usize], origin: &[f64]) -> Result<Self, GridError> {
        if sizes.is_empty() || sizes.len() > 3 || origin.len() != sizes.len() {
            return Err(GridError::Dimension(sizes.len()));
        }
        if let Some(&small) = sizes.iter().find(|&&s| s < MIN_GRID_SIZE) {
            return Err(GridError::TooSmall(small));
        }
        Ok(Self { sizes: sizes.to_vec(), origin: origin.to_vec() })
    }

    pub fn circle(n: usize) -> Result<Self, GridError> {
        Self::new(&[n])
    }

    pub fn square(n: usize) -> Result<Self, GridError> {
        Self::new(&[n, n])
    }

    pub fn cube(n: usize) -> Result<Self, GridError> {
        Self::new(&[n, n, n])
    }

    pub fn dims(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major linear index; the last axis varies fastest. Indices wrap periodically.
    pub fn index(&self, idx: &[isize]) -> usize {
        idx.iter().zip(&self.sizes).fold(0, |acc, (&i, &n)| acc * n + i.rem_euclid(n as isize) as usize)
    }

    pub fn multi_index(&self, mut linear: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for (slot, &n) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = linear % n;
            linear /= n;
        }
        out
    }

    pub fn point(&self, linear: usize) -> Vec<f64> {
        self.multi_index(linear)
            .iter()
            .zip(&self.sizes)
            .zip(&self.origin)
            .map(|((&j, &n), &o)| o + j as f64 / n as f64)
            .collect()
    }

    /// Samples `f` at every node. Parallel, but the output order is fixed.
    pub fn sample<T, F>(&self, f: F) -> SampledField<T>
    where
        T: Send,
        F: Fn(&[f64]) -> T + Sync,
    {
        let values = (0..self.len()).into_par_iter().map(|j| f(&self.point(j))).collect();
        SampledField { grid: self.clone(), values }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledField<T> {
    pub grid: TorusGrid,
    pub values: Vec<T>,
}

impl<T> SampledField<T> {
    pub fn at(&self, idx: &[isize]) -> &T {
        &self.values[self.grid.index(idx)]
    }

    pub fn map<U: Send, F>(&self, f: F) -> SampledField<U>
    where
        T: Sync,
        F: Fn(&T) -> U + Sync + Send,
    {
        SampledField { grid: self.grid.clone(), values: self.values.par_iter().map(f).collect() }
    }
}

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CMat2(pub [[Complex64; 2]; 2]);

impl CMat2 {
    pub fn zero() -> Self {
        Self([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn e11() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self([[a, z], [z, d]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self(m.map(|row| row.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self(self.0.map(|row| row.map(|x| x * c)))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> [Complex64; 2] {
        [self.0[0][j], self.0[1][j]]
    }

    /// Flattened `(re, im)` pairs in row-major order.
    pub fn entries(&self) -> [Complex64; 4] {
        [self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]]
    }

    /// `max(|P^2 - P|, |P - P*|)` entrywise.
    pub fn projection_defect(&self) -> f64 {
        (*self * *self - *self).max_abs().max((*self - self.adjoint()).max_abs())
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, rhs: CMat2) -> CMat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, rhs: CMat2) -> CMat2 {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, rhs: CMat2) -> CMat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = CMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }
}

const AXES: [&str; 3] = ["theta", "phi", "psi"];

/// Values that can be written as CSV columns.
pub trait CsvValue {
    fn header() -> Vec<String>;
    fn columns(&self) -> Vec<f64>;
}

impl CsvValue for Complex64 {
    fn header() -> Vec<String> {
        vec!["re".into(), "im".into()]
    }
    fn columns(&self) -> Vec<f64> {
        vec![self.re, self.im]
    }
}

impl CsvValue for f64 {
    fn header() -> Vec<String> {
        vec!["value".into()]
    }
    fn columns(&self) -> Vec<f64> {
        vec![*self]
    }
}

impl CsvValue for CMat2 {
    fn header() -> Vec<String> {
        let mut h = Vec::new();
        for ij in ["11", "12", "21", "22"] {
            h.push(format!("re_{ij}"));
            h.push(format!("im_{ij}"));
        }
        h
    }
    fn columns(&self) -> Vec<f64> {
        self.entries().iter().flat_map(|z| [z.re, z.im]).collect()
    }
}

/// Writes `# theta,phi[,psi],<value columns>` followed by one row per node in grid order.
pub fn write_csv<T: CsvValue, W: Write>(field: &SampledField<T>, mut out: W) -> io::Result<()> {
    let mut header: Vec<String> = AXES[..field.grid.dims()].iter().map(|s| s.to_string()).collect();
    header.extend(T::header());
    writeln!(out, "# {}", header.join(","))?;
    for (j, v) in field.values.iter().enumerate() {
        let row: Vec<String> =
            field.grid.point(j).into_iter().chain(v.columns()).map(|x| format!("{x:e}")).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert_eq!(TorusGrid::circle(4), Err(GridError::TooSmall(4)));
        assert!(matches!(TorusGrid::new(&[8, 8, 8, 8]), Err(GridError::Dimension(4))));
        assert!(matches!(TorusGrid::new(&[]), Err(GridError::Dimension(0))));
    }

    #[test]
    fn periodic_indexing() {
        let g = TorusGrid::new(&[8, 16]).unwrap();
        assert_eq!(g.index(&[8, 0]), g.index(&[0, 0]));
        assert_eq!(g.index(&[-1, 16]), g.index(&[7, 0]));
        let j = g.index(&[3, 5]);
        assert_eq!(g.multi_index(j), vec![3, 5]);
        assert_eq!(g.point(j), vec![3.0 / 8.0, 5.0 / 16.0]);
    }

    #[test]
    fn csv_layout() {
        let g = TorusGrid::circle(8).unwrap();
        let f = g.sample(|p| Complex64::new(p[0], 0.0));
        let mut buf = Vec::new();
        write_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# theta,re,im"));
        assert_eq!(text.lines().count(), 9);
        let m = TorusGrid::square(8).unwrap().sample(|_| CMat2::e11());
        let mut buf = Vec::new();
        write_csv(&m, &mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("# theta,phi,re_11,im_11,re_12,im_12,re_21,im_21,re_22,im_22\n"));
    }
}
