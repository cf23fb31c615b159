use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{AlgebraError, GaussRational, MAX_VARS};

/// `s_1^{e_1} ... s_n^{e_n} * prod_{i in roots} r_i`, with each root to power 0 or 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub exponents: Vec<i64>,
    /// Bit `i` set means `r_{i+1}` is a factor.
    pub roots: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { exponents: vec![0; n], roots: 0 }
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn has_root(&self, var: usize) -> bool {
        self.roots & (1 << var) != 0
    }

    pub fn is_one(&self) -> bool {
        self.roots == 0 && self.exponents.iter().all(|&e| e == 0)
    }
}

/// An element of `C[Z^n][r_1..r_n] / (r_i^2 - (2 - s_i - s_i^{-1}))` with Gaussian-rational
/// coefficients, kept in canonical form (no zero coefficients, roots reduced).
///
/// Variables are 0-indexed internally; `s_1` in the text grammar is variable 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussRational::from_int(1))
    }

    pub fn constant(n: usize, c: GaussRational) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn int(n: usize, k: i64) -> Self {
        Self::constant(n, GaussRational::from_int(k))
    }

    pub fn ratio(n: usize, num: i64, den: i64) -> Self {
        Self::constant(n, GaussRational::ratio(num, den))
    }

    pub fn imag_unit(n: usize) -> Self {
        Self::constant(n, GaussRational::i())
    }

    pub fn term(mono: Monomial, c: GaussRational) -> Self {
        let mut e = Self::zero(mono.n());
        e.add_term(mono, &c);
        e
    }

    /// `s_{var+1}^power`.
    pub fn s_pow(n: usize, var: usize, power: i64) -> Self {
        assert!(var < n);
        let mut m = Monomial::one(n);
        m.exponents[var] = power;
        Self::term(m, GaussRational::from_int(1))
    }

    pub fn s(n: usize, var: usize) -> Self {
        Self::s_pow(n, var, 1)
    }

    pub fn s_inv(n: usize, var: usize) -> Self {
        Self::s_pow(n, var, -1)
    }

    /// The self-adjoint root `r_{var+1}` of `2 - s - s^{-1}`.
    pub fn r(n: usize, var: usize) -> Self {
        assert!(var < n);
        let mut m = Monomial::one(n);
        m.roots = 1 << var;
        Self::term(m, GaussRational::from_int(1))
    }

    /// `2 - s - s^{-1}`, i.e. `2 - 2cos(2 pi theta)` on the torus.
    pub fn two_minus_s_sinv(n: usize, var: usize) -> Self {
        &(&Self::int(n, 2) - &Self::s(n, var)) - &Self::s_inv(n, var)
    }

    /// `cos(2 pi theta) = (s + s^{-1}) / 2`.
    pub fn cos(n: usize, var: usize) -> Self {
        (&Self::s(n, var) + &Self::s_inv(n, var)).scale(&GaussRational::ratio(1, 2))
    }

    /// `sin(2 pi theta) = (s - s^{-1}) / (2i)`.
    pub fn sin(n: usize, var: usize) -> Self {
        let c = &GaussRational::ratio(1, 2) / &GaussRational::i();
        (&Self::s(n, var) - &Self::s_inv(n, var)).scale(&c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    /// The scalar value if the element is a constant.
    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::default()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, mono: Monomial, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_n(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::VariableCount { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    /// Canonical product; every `r_i^2` is rewritten as `2 - s_i - s_i^{-1}`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let coeff = c1 * c2;
                let exponents: Vec<i64> =
                    m1.exponents.iter().zip(&m2.exponents).map(|(a, b)| a + b).collect();
                let mono = Monomial { exponents, roots: m1.roots ^ m2.roots };
                let shared = m1.roots & m2.roots;
                if shared == 0 {
                    out.add_term(mono, &coeff);
                    continue;
                }
                // Each shared root contributes a factor 2 - s_i - s_i^{-1}.
                let mut expansion = vec![(mono, coeff)];
                for var in 0..self.n {
                    if shared & (1 << var) == 0 {
                        continue;
                    }
                    let mut next = Vec::with_capacity(expansion.len() * 3);
                    for (m, c) in expansion {
                        let mut up = m.clone();
                        up.exponents[var] += 1;
                        let mut down = m.clone();
                        down.exponents[var] -= 1;
                        next.push((m, &c * &GaussRational::from_int(2)));
                        next.push((up, -&c));
                        next.push((down, -c));
                    }
                    expansion = next;
                }
                for (m, c) in expansion {
                    out.add_term(m, &c);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    /// Integer power. Negative powers exist only for single-term elements without roots.
    pub fn pow(&self, k: i64) -> Result<Self, AlgebraError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit `c * s^e` (the units of the ring the grammar can name).
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.terms.len() != 1 {
            return Err(AlgebraError::NotInvertible(self.to_string()));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.roots != 0 {
            return Err(AlgebraError::NotInvertible(self.to_string()));
        }
        let inv = c.inv().ok_or_else(|| AlgebraError::NotInvertible(self.to_string()))?;
        let exponents = m.exponents.iter().map(|e| -e).collect();
        Ok(Self::term(Monomial { exponents, roots: 0 }, inv))
    }

    /// The involution: conjugate coefficients, `s_i -> s_i^{-1}`, `r_i -> r_i`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let exponents = m.exponents.iter().map(|e| -e).collect();
            out.add_term(Monomial { exponents, roots: m.roots }, &c.conj());
        }
        out
    }

    /// Point evaluation with coordinates in turns: `s_i -> exp(2 pi i theta_i)`,
    /// `r_i -> 2|sin(pi theta_i)|`.
    pub fn eval(&self, point: &[f64]) -> Complex64 {
        assert_eq!(point.len(), self.n, "point dimension must match variable count");
        let roots: Vec<f64> = point.iter().map(|t| 2.0 * (PI * (t - t.round())).sin().abs()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let phase: f64 = m.exponents.iter().zip(point).map(|(&e, &t)| e as f64 * t).sum();
            // Reducing to [-1/2, 1/2] keeps small negative phases accurate.
            let phase = phase - phase.round();
            let mut v = c.to_complex() * Complex64::from_polar(1.0, 2.0 * PI * phase);
            for (var, r) in roots.iter().enumerate() {
                if m.has_root(var) {
                    v *= r;
                }
            }
            acc += v;
        }
        acc
    }

    /// Restriction to the slice `theta_var = 0` (`s_var -> 1`, `r_var -> 0`), dropping the
    /// variable from the index set.
    pub fn restrict_to_zero(&self, var: usize) -> Self {
        assert!(var < self.n);
        let mut out = Self::zero(self.n - 1);
        for (m, c) in &self.terms {
            if m.has_root(var) {
                continue;
            }
            let mut exponents = m.exponents.clone();
            exponents.remove(var);
            let low = m.roots & ((1 << var) - 1);
            let high = (m.roots >> (var + 1)) << var;
            out.add_term(Monomial { exponents, roots: low | high }, c);
        }
        out
    }

    /// Re-expresses the element in `n_new` variables, sending variable `j` to `map[j]`.
    pub fn reindex(&self, n_new: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.n);
        assert!(map.iter().all(|&j| j < n_new));
        let mut out = Self::zero(n_new);
        for (m, c) in &self.terms {
            let mut exponents = vec![0; n_new];
            let mut roots = 0u32;
            for (j, &target) in map.iter().enumerate() {
                exponents[target] += m.exponents[j];
                if m.has_root(j) {
                    roots |= 1 << target;
                }
            }
            // Only a genuine variable renaming is expected, but a collapse of two roots onto
            // one variable still reduces correctly through multiplication.
            if roots.count_ones() == m.roots.count_ones() {
                out.add_term(Monomial { exponents, roots }, c);
            } else {
                let mut t = Self::term(Monomial { exponents, roots: 0 }, c.clone());
                for (j, &target) in map.iter().enumerate() {
                    if m.has_root(j) {
                        t = &t * &Self::r(n_new, target);
                    }
                }
                out = &out + &t;
            }
        }
        out
    }

    /// Embeds into `n_new >= n` variables, keeping indices.
    pub fn extend(&self, n_new: usize) -> Self {
        let map: Vec<usize> = (0..self.n).collect();
        self.reindex(n_new, &map)
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&GaussRational::from_int(-1))
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

fn is_negative(c: &GaussRational) -> bool {
    use num_traits::{Signed, Zero};
    c.re.is_negative() || (c.re.is_zero() && c.im.is_negative())
}

fn fmt_factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for (var, &e) in m.exponents.iter().enumerate() {
        match e {
            0 => {}
            1 => out.push(format!("s{}", var + 1)),
            _ => out.push(format!("s{}^{}", var + 1, e)),
        }
        if m.has_root(var) {
            out.push(format!("r{}", var + 1));
        }
    }
    out
}

fn fmt_term(m: &Monomial, c: &GaussRational) -> String {
    let factors = fmt_factors(m);
    if factors.is_empty() {
        return c.to_string();
    }
    let body = factors.join("*");
    if c.is_one() {
        body
    } else if (-c).is_one() {
        format!("-{body}")
    } else {
        format!("{c}*{body}")
    }
}

/// Canonical text in the expression grammar; parsing it back yields the same element.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx == 0 {
                write!(f, "{}", fmt_term(m, c))?;
            } else if is_negative(c) {
                write!(f, " - {}", fmt_term(m, &-c))?;
            } else {
                write!(f, " + {}", fmt_term(m, c))?;
            }
        }
        Ok(())
    }
}
