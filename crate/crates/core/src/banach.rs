//! Finitely supported Laurent series in one variable with double coefficients, weighted
//! `l^1` norms `sum |c_k| alpha^|k|`, and the diagnostics built on the Fourier expansion
//! `|sin(pi theta)| = 2/pi - (4/pi) sum_{k >= 1} cos(2 pi k theta) / (4k^2 - 1)`.
//!
//! The root `r` of `2 - s - s^{-1}` is twice this series.

use std::f64::consts::{LN_2, PI};
use std::io::{self, Write};

use num_complex::Complex64;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BanachError {
    #[error("weight parameter must be finite and at least 1, got {0}")]
    Weight(f64),
}

/// `sum_k c_k s^k`, stored densely from the lowest nonzero exponent.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoeffSeq {
    low: i64,
    coeffs: Vec<Complex64>,
}

impl CoeffSeq {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self { low: k, coeffs: vec![c] }.trimmed()
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Self::monomial(k, Complex64::new(1.0, 0.0))
    }

    /// Dense coefficients for exponents `low, low + 1, ...`.
    pub fn from_dense(low: i64, coeffs: Vec<Complex64>) -> Self {
        Self { low, coeffs }.trimmed()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let Some(low) = pairs.iter().map(|p| p.0).min() else {
            return Self::zero();
        };
        let high = pairs.iter().map(|p| p.0).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (high - low + 1) as usize];
        for (k, c) in pairs {
            coeffs[(k - low) as usize] += c;
        }
        Self { low, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        while self.coeffs.last() == Some(&zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == zero).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest and largest exponent with a nonzero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.low, self.low + self.coeffs.len() as i64 - 1))
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let j = k - self.low;
        if j < 0 || j >= self.coeffs.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[j as usize]
        }
    }

    /// `(k, c_k)` in increasing `k`, zeros included inside the support.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(j, &c)| (self.low + j as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_pairs(self.iter().chain(other.iter()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|&x| x * c).collect() }.trimmed()
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { low: self.low + other.low, coeffs: out }.trimmed()
    }

    /// `c*_k = conj(c_{-k})`.
    pub fn star(&self) -> Self {
        let Some((_, high)) = self.support() else {
            return Self::zero();
        };
        Self { low: -high, coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect() }
    }

    /// Termwise `d/dtheta` with `s = exp(2 pi i theta)`.
    pub fn derivative(&self) -> Self {
        Self::from_pairs(self.iter().map(|(k, c)| (k, c * Complex64::new(0.0, 2.0 * PI * k as f64))))
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.iter()
            .map(|(k, c)| {
                let phase = k as f64 * theta;
                c * Complex64::from_polar(1.0, 2.0 * PI * (phase - phase.round()))
            })
            .sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.weighted_norm(Weight::UNWEIGHTED)
    }

    pub fn weighted_norm(&self, w: Weight) -> f64 {
        self.iter().map(|(k, c)| c.norm() * w.at(k)).sum()
    }

    /// `max_j |x(j / n)|`.
    pub fn sup_norm_on_grid(&self, n: usize) -> f64 {
        (0..n).map(|j| self.eval(j as f64 / n as f64).norm()).fold(0.0, f64::max)
    }
}

impl Serialize for CoeffSeq {
    /// `{"k": c_k}` in increasing `k`; real coefficients as numbers, others as `[re, im]`.
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let nonzero: Vec<_> = self.iter().filter(|(_, c)| c.norm() != 0.0).collect();
        let mut map = ser.serialize_map(Some(nonzero.len()))?;
        for (k, c) in nonzero {
            if c.im == 0.0 {
                map.serialize_entry(&k.to_string(), &c.re)?;
            } else {
                map.serialize_entry(&k.to_string(), &[c.re, c.im])?;
            }
        }
        map.end()
    }
}

/// `# k,re,im` then one row per exponent in the support.
pub fn write_coeff_csv<W: Write>(x: &CoeffSeq, mut out: W) -> io::Result<()> {
    writeln!(out, "# k,re,im")?;
    for (k, c) in x.iter() {
        writeln!(out, "{k},{:e},{:e}", c.re, c.im)?;
    }
    Ok(())
}

/// The weight `w(k) = alpha^|k|`, `alpha >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Weight {
    alpha: f64,
}

impl Weight {
    pub const UNWEIGHTED: Weight = Weight { alpha: 1.0 };

    pub fn new(alpha: f64) -> Result<Self, BanachError> {
        if alpha.is_finite() && alpha >= 1.0 {
            Ok(Self { alpha })
        } else {
            Err(BanachError::Weight(alpha))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn at(&self, k: i64) -> f64 {
        self.alpha.powi(k.unsigned_abs().min(i32::MAX as u64) as i32)
    }
}

/// `S_N`: `c_0 = 2/pi`, `c_{+-k} = -2 / (pi (4k^2 - 1))` for `1 <= k <= N`.
pub fn sin_fourier_partial(n: usize) -> CoeffSeq {
    let n = n as i64;
    let coeffs = (-n..=n)
        .map(|k| {
            let k2 = (k * k) as f64;
            let c = if k == 0 { 2.0 / PI } else { -2.0 / (PI * (4.0 * k2 - 1.0)) };
            Complex64::new(c, 0.0)
        })
        .collect();
    CoeffSeq::from_dense(-n, coeffs)
}

fn fourier_term_pair(k: i64) -> f64 {
    let k = k as f64;
    4.0 / (PI * (4.0 * k * k - 1.0))
}

/// Terms summed directly past `N` before switching to the asymptotic remainder.
const DIRECT_TERMS: i64 = 2000;

/// `||limit - S_N||_1 = sum_{k > N} 4 / (pi (4k^2 - 1))`: a direct sum over the first terms,
/// then an Euler-Maclaurin remainder for `g(x) = 4 / (pi (4x^2 - 1))` from `K` on.
pub fn l1_tail(n: usize) -> f64 {
    let start = n as i64 + 1;
    let k0 = start + DIRECT_TERMS;
    // Smallest terms first.
    let direct: f64 = (start..k0).rev().map(fourier_term_pair).sum();
    direct + euler_maclaurin_remainder(k0 as f64)
}

/// `sum_{k >= K} g(k)` for `g(x) = (2/pi)((2x-1)^{-1} - (2x+1)^{-1})`.
fn euler_maclaurin_remainder(k: f64) -> f64 {
    // d^m/dx^m (2x +- 1)^{-1} = (-1)^m m! 2^m (2x +- 1)^{-m-1}
    let deriv = |m: i32| {
        let fact: f64 = (1..=m).map(f64::from).product();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        (2.0 / PI)
            * sign
            * fact
            * 2f64.powi(m)
            * ((2.0 * k - 1.0).powi(-m - 1) - (2.0 * k + 1.0).powi(-m - 1))
    };
    let integral = (1.0 / PI) * (2.0 / (2.0 * k - 1.0)).ln_1p();
    let bernoulli = [(2, 1.0 / 6.0), (4, -1.0 / 30.0), (6, 1.0 / 42.0)];
    let mut total = integral + deriv(0) / 2.0;
    for (j, b) in bernoulli {
        let fact: f64 = (1..=j).map(f64::from).product();
        total -= b / fact * deriv(j - 1);
    }
    total
}

/// `l^1` norm of the full series: `||S_0||_1` plus the tail past 0.
pub fn sin_series_l1_norm() -> f64 {
    sin_fourier_partial(0).l1_norm() + l1_tail(0)
}

/// Weighted norm of the `k`-th term `c_k s^k + c_{-k} s^{-k}` of the series.
pub fn series_term_norm(k: usize, w: Weight) -> f64 {
    let term = if k == 0 {
        sin_fourier_partial(0)
    } else {
        sin_fourier_partial(k).sub(&sin_fourier_partial(k - 1))
    };
    term.weighted_norm(w)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralRadiusEstimate {
    /// `||x^k||^{1/k}` for `k = 1..K`.
    pub sequence: Vec<f64>,
    /// Running minimum of `sequence`, an upper bound for the spectral radius.
    pub running_min: Vec<f64>,
}

impl SpectralRadiusEstimate {
    pub fn bound(&self) -> f64 {
        self.running_min.last().copied().unwrap_or(f64::INFINITY)
    }
}

/// `v^{1/k}`, exact whenever `v` is the `k`-th power of a double.
fn kth_root(v: f64, k: u32) -> f64 {
    let r = v.powf(1.0 / k as f64);
    [r.next_down(), r, r.next_up()]
        .into_iter()
        .min_by(|a, b| {
            let ea = (a.powi(k as i32) - v).abs();
            let eb = (b.powi(k as i32) - v).abs();
            ea.total_cmp(&eb)
        })
        .unwrap()
}

/// The sequence `||x^k||_w^{1/k}`, `k = 1..K`, with powers by repeated convolution. Each power is
/// rescaled by a power of two to avoid overflow; the scale is carried as an exponent.
pub fn spectral_radius_estimate(x: &CoeffSeq, w: Weight, k_max: usize) -> SpectralRadiusEstimate {
    let mut sequence = Vec::with_capacity(k_max);
    let mut running_min = Vec::with_capacity(k_max);
    let mut power = CoeffSeq::s_pow(0);
    let mut exponent: i64 = 0;
    let mut best = f64::INFINITY;
    for k in 1..=k_max as u32 {
        power = power.mul(x);
        let big = power.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
        if big > 0.0 && big.is_finite() {
            let e = big.log2().floor() as i32;
            power = power.scale(Complex64::new(2f64.powi(-e), 0.0));
            exponent += e as i64;
        }
        let norm = power.weighted_norm(w);
        let direct = norm * 2f64.powi(exponent as i32);
        let value = if norm == 0.0 {
            0.0
        } else if direct.is_finite() && direct > 0.0 && exponent.abs() < 900 {
            kth_root(direct, k)
        } else {
            ((norm.ln() + exponent as f64 * LN_2) / k as f64).exp()
        };
        best = best.min(value);
        sequence.push(value);
        running_min.push(best);
    }
    SpectralRadiusEstimate { sequence, running_min }
}

/// `(2 delta_0 - delta_1 - delta_{-1}) / 4`, the coefficients of `sin^2(pi theta)`.
pub fn sin_squared() -> CoeffSeq {
    CoeffSeq::from_pairs([
        (-1, Complex64::new(-0.25, 0.0)),
        (0, Complex64::new(0.5, 0.0)),
        (1, Complex64::new(-0.25, 0.0)),
    ])
}

/// `||S_N * S_N - sin^2||_1`.
pub fn square_residual(n: usize) -> f64 {
    let s = sin_fourier_partial(n);
    s.mul(&s).sub(&sin_squared()).l1_norm()
}

/// Grid used for the `C^1` gap when none is given: at least 16 nodes per period of the highest
/// frequency `2N`.
pub fn default_c1_grid(n: usize) -> usize {
    (32 * n).max(4096)
}

/// `max_j |d/dtheta (S_{2N} - S_N)(j / grid)|`.
pub fn c1_gap(n: usize, grid: usize) -> f64 {
    sin_fourier_partial(2 * n).sub(&sin_fourier_partial(n)).derivative().sup_norm_on_grid(grid)
}

/// `max_j |(S_{2N} - S_N)(j / grid)|`.
pub fn sup_gap(n: usize, grid: usize) -> f64 {
    sin_fourier_partial(2 * n).sub(&sin_fourier_partial(n)).sup_norm_on_grid(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn telescoped_tail(n: usize) -> f64 {
        2.0 / (PI * (2 * n + 1) as f64)
    }

    #[test]
    fn partial_sum_coefficients() {
        let s0 = sin_fourier_partial(0);
        assert_eq!(s0.support(), Some((0, 0)));
        assert_eq!(s0.coeff(0).re, 2.0 / PI);
        let s3 = sin_fourier_partial(3);
        assert_eq!(s3.support(), Some((-3, 3)));
        assert_eq!(s3.coeff(-2), s3.coeff(2));
        assert!((s3.coeff(2).re + 2.0 / (15.0 * PI)).abs() < 1e-17);
    }

    #[test]
    fn tail_matches_telescoping() {
        for n in [0, 1, 10, 100, 1000, 10_000] {
            assert!((l1_tail(n) - telescoped_tail(n)).abs() < 1e-12, "n={n}");
        }
        assert!((l1_tail(100) - 3.16726e-3).abs() < 1e-8);
        assert!((sin_series_l1_norm() - 4.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn weighted_norms() {
        let w2 = Weight::new(2.0).unwrap();
        assert_eq!(CoeffSeq::s_pow(1).weighted_norm(w2), 2.0);
        let s10 = sin_fourier_partial(10).l1_norm();
        assert!(s10 < 4.0 / PI && 4.0 / PI - s10 <= 2.0 / (21.0 * PI) + 1e-15);
        assert!(Weight::new(0.5).is_err());
        assert!(Weight::new(f64::NAN).is_err());
    }

    #[test]
    fn beurling_terms() {
        let w = Weight::new(1.2).unwrap();
        let t20 = series_term_norm(20, w);
        assert!((t20 - 4.0 / PI * 1.2f64.powi(20) / 1599.0).abs() < 1e-14);
        assert!((t20 - 0.0305).abs() < 1e-4);
        let t100 = series_term_norm(100, w);
        assert!((t100 - 4.0 / PI * 1.2f64.powi(100) / 39999.0).abs() < 1e-9 * t100);
        assert!(t100 > 1.0);
    }

    #[test]
    fn spectral_radius_of_s() {
        for alpha in [1.0, 2.0] {
            let est = spectral_radius_estimate(&CoeffSeq::s_pow(1), Weight::new(alpha).unwrap(), 10);
            assert!(est.sequence.iter().all(|&v| v == alpha), "{:?}", est.sequence);
            assert_eq!(est.bound(), alpha);
        }
    }

    #[test]
    fn spectral_radius_of_laplacian() {
        let x = CoeffSeq::from_pairs([
            (-1, Complex64::new(-1.0, 0.0)),
            (0, Complex64::new(2.0, 0.0)),
            (1, Complex64::new(-1.0, 0.0)),
        ]);
        let est = spectral_radius_estimate(&x, Weight::UNWEIGHTED, 12);
        assert!(est.sequence.iter().all(|&v| v == 4.0), "{:?}", est.sequence);
    }

    #[test]
    fn huge_powers_stay_finite() {
        let x = CoeffSeq::from_pairs([(0, Complex64::new(1e200, 0.0)), (1, Complex64::new(1e200, 0.0))]);
        let est = spectral_radius_estimate(&x, Weight::UNWEIGHTED, 40);
        let want = 2e200;
        assert!(est.sequence.iter().all(|v| ((v - want) / want).abs() < 1e-10));
    }

    #[test]
    fn square_residual_decreases() {
        let r: Vec<f64> = [8, 16, 32, 512].iter().map(|&n| square_residual(n)).collect();
        assert!(r[0] > r[1] && r[1] > r[2] && r[2] > r[3]);
        assert!(r[3] < 1e-2);
    }

    #[test]
    fn value_at_half() {
        for n in [10, 100, 1000] {
            let v = sin_fourier_partial(n).eval(0.5);
            assert!(v.im.abs() < 1e-15);
            assert!(1.0 - v.re <= telescoped_tail(n) + 1e-14 && v.re <= 1.0 + 1e-14);
        }
    }

    #[test]
    fn c1_gap_against_real_form() {
        // d/dtheta (S_2N - S_N) = sum_{N < k <= 2N} 8k sin(2 pi k theta) / (4k^2 - 1)
        let n = 16;
        let grid = 4096;
        let direct = (0..grid)
            .map(|j| {
                let t = j as f64 / grid as f64;
                (n + 1..=2 * n)
                    .map(|k| {
                        let k = k as f64;
                        8.0 * k * (2.0 * PI * k * t).sin() / (4.0 * k * k - 1.0)
                    })
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0, f64::max);
        assert!((c1_gap(n, grid) - direct).abs() < 1e-10);
        assert!(direct > 0.5);
        assert!(sup_gap(n, grid) <= telescoped_tail(n));
    }

    #[test]
    fn star_and_serialization_shape() {
        let x = CoeffSeq::from_pairs([(2, Complex64::new(1.0, 2.0)), (-1, Complex64::new(3.0, 0.0))]);
        let xs = x.star();
        assert_eq!(xs.coeff(-2), Complex64::new(1.0, -2.0));
        assert_eq!(xs.coeff(1), Complex64::new(3.0, 0.0));
        assert_eq!(xs.star(), x);
        let mut buf = Vec::new();
        write_coeff_csv(&x, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 5);
    }
}
