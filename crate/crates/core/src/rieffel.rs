//! 2x2 matrices over the torus ring, Rieffel pairs and their exact identity checks.
//!
//! A Rieffel pair `(X0, X1)` over `n` variables assembles into
//! `P = v^{-1} X1* + X0 + v X1` over `n + 1` variables, where the circle variable `v` is
//! always the last index.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraError, GaussRational};
use crate::field::CMat2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RieffelError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("conjugating matrix is not unitary: {0}")]
    NotUnitary(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixAlg {
    entries: [[AlgebraElement; 2]; 2],
}

impl MatrixAlg {
    pub fn new(entries: [[AlgebraElement; 2]; 2]) -> Result<Self, AlgebraError> {
        let n = entries[0][0].n();
        for e in entries.iter().flatten() {
            if e.n() != n {
                return Err(AlgebraError::VariableCount { left: n, right: e.n() });
            }
        }
        Ok(Self { entries })
    }

    pub fn from_rows(
        a: AlgebraElement,
        b: AlgebraElement,
        c: AlgebraElement,
        d: AlgebraElement,
    ) -> Result<Self, AlgebraError> {
        Self::new([[a, b], [c, d]])
    }

    pub fn zero(n: usize) -> Self {
        let z = AlgebraElement::zero(n);
        Self { entries: [[z.clone(), z.clone()], [z.clone(), z]] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(AlgebraElement::one(n), AlgebraElement::one(n))
    }

    pub fn e11(n: usize) -> Self {
        Self::diag(AlgebraElement::one(n), AlgebraElement::zero(n))
    }

    pub fn diag(a: AlgebraElement, d: AlgebraElement) -> Self {
        let z = AlgebraElement::zero(a.n());
        Self { entries: [[a, z.clone()], [z, d]] }
    }

    pub fn n(&self) -> usize {
        self.entries[0][0].n()
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[AlgebraElement; 2]; 2] {
        &self.entries
    }

    fn zip(&self, other: &Self, f: impl Fn(&AlgebraElement, &AlgebraElement) -> Result<AlgebraElement, AlgebraError>) -> Result<Self, AlgebraError> {
        let e = |i: usize, j: usize| f(&self.entries[i][j], &other.entries[i][j]);
        Ok(Self { entries: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]] })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip(other, |a, b| a.checked_add(b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip(other, |a, b| a.checked_sub(b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let (a, b) = (&self.entries, &other.entries);
        let e = |i: usize, j: usize| -> Result<AlgebraElement, AlgebraError> {
            a[i][0].checked_mul(&b[0][j])?.checked_add(&a[i][1].checked_mul(&b[1][j])?)
        };
        Ok(Self { entries: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]] })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("variable count mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("variable count mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("variable count mismatch")
    }

    pub fn map(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> Self {
        let e = &self.entries;
        Self { entries: [[f(&e[0][0]), f(&e[0][1])], [f(&e[1][0]), f(&e[1][1])]] }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn scale_by(&self, x: &AlgebraElement) -> Self {
        self.map(|e| e * x)
    }

    /// Transpose of the entrywise star.
    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self { entries: [[e[0][0].star(), e[1][0].star()], [e[0][1].star(), e[1][1].star()]] }
    }

    pub fn trace(&self) -> AlgebraElement {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn det(&self) -> AlgebraElement {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn extend(&self, n_new: usize) -> Self {
        self.map(|e| e.extend(n_new))
    }

    pub fn reindex(&self, n_new: usize, map: &[usize]) -> Self {
        self.map(|e| e.reindex(n_new, map))
    }

    pub fn restrict_to_zero(&self, var: usize) -> Self {
        self.map(|e| e.restrict_to_zero(var))
    }

    pub fn eval(&self, point: &[f64]) -> CMat2 {
        let e = &self.entries;
        CMat2([[e[0][0].eval(point), e[0][1].eval(point)], [e[1][0].eval(point), e[1][1].eval(point)]])
    }

    /// Entries as text in the expression grammar.
    pub fn to_strings(&self) -> [[String; 2]; 2] {
        let e = &self.entries;
        [[e[0][0].to_string(), e[0][1].to_string()], [e[1][0].to_string(), e[1][1].to_string()]]
    }
}

/// One exact identity `lhs = rhs`; `residual` is `lhs - rhs` in canonical text (`"0"` when it holds).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
}

impl Verdict {
    fn push(&mut self, identity: &str, holds: bool, residual: String) {
        self.checks.push(IdentityCheck { identity: identity.to_string(), holds, residual });
        self.passed = self.checks.iter().all(|c| c.holds);
    }

    fn push_element(&mut self, identity: &str, residual: AlgebraElement) {
        self.push(identity, residual.is_zero(), residual.to_string());
    }

    fn push_matrix(&mut self, identity: &str, residual: MatrixAlg) {
        let holds = residual.is_zero();
        let text = if holds {
            "0".to_string()
        } else {
            let s = residual.to_strings();
            format!("[[{}, {}], [{}, {}]]", s[0][0], s[0][1], s[1][0], s[1][1])
        };
        self.push(identity, holds, text);
    }

    pub fn failed(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn get(&self, identity: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    pub fn merge(mut self, other: Verdict) -> Verdict {
        self.checks.extend(other.checks);
        self.passed = self.checks.iter().all(|c| c.holds);
        self
    }
}

/// Exact projection identities, and with `rank1` the trace/determinant criterion for a rank-one
/// idempotent in `M_2`.
pub fn check_projection(m: &MatrixAlg, rank1: bool) -> Verdict {
    let n = m.n();
    let mut v = Verdict { passed: true, checks: Vec::new() };
    v.push_matrix("P=P*", m.sub(&m.adjoint()));
    v.push_matrix("P^2=P", m.mul(m).sub(m));
    if rank1 {
        v.push_element("tr(P)=1", &m.trace() - &AlgebraElement::one(n));
        v.push_element("det(P)=0", m.det());
    }
    v
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RieffelPair {
    pub x0: MatrixAlg,
    pub x1: MatrixAlg,
}

impl RieffelPair {
    pub fn new(x0: MatrixAlg, x1: MatrixAlg) -> Result<Self, AlgebraError> {
        if x0.n() != x1.n() {
            return Err(AlgebraError::VariableCount { left: x0.n(), right: x1.n() });
        }
        Ok(Self { x0, x1 })
    }

    pub fn n(&self) -> usize {
        self.x0.n()
    }
}

/// Checks `X0 = X0*`, `X1^2 = 0`, `X1 = X0 X1 + X1 X0`, `X0 = X0^2 + X1* X1 + X1 X1*`, and the
/// nilpotent identity `X1* X1 + X1 X1* = tr(X1* X1) 1`.
pub fn check_rieffel(p: &RieffelPair) -> Verdict {
    let n = p.n();
    let (x0, x1) = (&p.x0, &p.x1);
    let x1s = x1.adjoint();
    let gram = x1s.mul(x1).add(&x1.mul(&x1s));
    let mut v = Verdict { passed: true, checks: Vec::new() };
    v.push_matrix("X0=X0*", x0.sub(&x0.adjoint()));
    v.push_matrix("X1^2=0", x1.mul(x1));
    v.push_matrix("X1=X0X1+X1X0", x1.sub(&x0.mul(x1).add(&x1.mul(x0))));
    v.push_matrix("X0=X0^2+X1*X1+X1X1*", x0.sub(&x0.mul(x0).add(&gram)));
    let tr = x1s.mul(x1).trace();
    v.push_matrix("X1*X1+X1X1*=tr(X1*X1)1", gram.sub(&MatrixAlg::identity(n).scale_by(&tr)));
    v
}

/// `v^{-1} X1* + X0 + v X1` with `v` appended as the last variable.
pub fn assemble_p(p: &RieffelPair) -> MatrixAlg {
    let n = p.n() + 1;
    let v = AlgebraElement::s(n, n - 1);
    let v_inv = AlgebraElement::s_inv(n, n - 1);
    let x0 = p.x0.extend(n);
    let x1 = p.x1.extend(n);
    x1.adjoint().scale_by(&v_inv).add(&x0).add(&x1.scale_by(&v))
}

/// The scalar parametrisation `X0 = [[a, b], [b*, 1 - a]]`, `X1 = [[alpha, beta], [gamma, -alpha]]`
/// of a non-trivial rank-one Rieffel pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarData {
    pub a: AlgebraElement,
    pub b: AlgebraElement,
    pub alpha: AlgebraElement,
    pub beta: AlgebraElement,
    pub gamma: AlgebraElement,
}

impl ScalarData {
    pub fn new(
        a: AlgebraElement,
        b: AlgebraElement,
        alpha: AlgebraElement,
        beta: AlgebraElement,
        gamma: AlgebraElement,
    ) -> Result<Self, AlgebraError> {
        let n = a.n();
        for e in [&b, &alpha, &beta, &gamma] {
            if e.n() != n {
                return Err(AlgebraError::VariableCount { left: n, right: e.n() });
            }
        }
        Ok(Self { a, b, alpha, beta, gamma })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn pair(&self) -> RieffelPair {
        let n = self.n();
        let x0 = MatrixAlg {
            entries: [
                [self.a.clone(), self.b.clone()],
                [self.b.star(), &AlgebraElement::one(n) - &self.a],
            ],
        };
        let x1 = MatrixAlg {
            entries: [[self.alpha.clone(), self.beta.clone()], [self.gamma.clone(), -&self.alpha]],
        };
        RieffelPair { x0, x1 }
    }

    /// Reads the scalar functions back from a pair of the shape
    /// `X0 = [[a, b], [b*, 1 - a]]`, `X1 = [[alpha, beta], [gamma, -alpha]]`, compared exactly.
    pub fn from_pair(p: &RieffelPair) -> Option<Self> {
        let n = p.n();
        let [[a, b], [bs, d]] = p.x0.entries();
        let [[alpha, beta], [gamma, m]] = p.x1.entries();
        let shaped = *bs == b.star() && *d == &AlgebraElement::one(n) - a && *m == -alpha;
        shaped.then(|| Self {
            a: a.clone(),
            b: b.clone(),
            alpha: alpha.clone(),
            beta: beta.clone(),
            gamma: gamma.clone(),
        })
    }

    /// Evaluates `(a, b, alpha, beta, gamma)` at a point.
    pub fn eval(&self, point: &[f64]) -> [Complex64; 5] {
        [&self.a, &self.b, &self.alpha, &self.beta, &self.gamma].map(|e| e.eval(point))
    }
}

fn abs2(x: &AlgebraElement) -> AlgebraElement {
    x * &x.star()
}

/// The three scalar conditions for a non-trivial rank-one Rieffel pair, plus `a = a*` and
/// non-triviality (`beta`, `gamma` not both zero).
pub fn check_prop_main1(d: &ScalarData) -> Verdict {
    let n = d.n();
    let one = AlgebraElement::one(n);
    let two = AlgebraElement::int(n, 2);
    let mut v = Verdict { passed: true, checks: Vec::new() };
    v.push_element("a=a*", &d.a - &d.a.star());
    v.push_element("beta*gamma=-alpha^2", &(&d.beta * &d.gamma) + &(&d.alpha * &d.alpha));
    let linear = &(&(&(&(&two * &d.a) - &one) * &d.alpha) + &(&d.b * &d.gamma)) + &(&d.b.star() * &d.beta);
    v.push_element("(2a-1)alpha+b*gamma+conj(b)*beta=0", linear);
    let rhs = [
        &d.a * &d.a,
        abs2(&d.b),
        &two * &abs2(&d.alpha),
        abs2(&d.beta),
        abs2(&d.gamma),
    ]
    .iter()
    .fold(AlgebraElement::zero(n), |acc, t| &acc + t);
    v.push_element("a=a^2+|b|^2+2|alpha|^2+|beta|^2+|gamma|^2", &d.a - &rhs);
    let nontrivial = !(d.beta.is_zero() && d.gamma.is_zero());
    v.push(
        "beta,gamma not both 0",
        nontrivial,
        if nontrivial { "0".into() } else { "beta = gamma = 0".into() },
    );
    v
}

/// The scalar data of the trigonometric-plus-root pair over one variable `theta`:
/// `a = (3 + cos)/4`, `b = sin/4`, `alpha = (1 - cos)/8`, `beta = (r - sin)/8`,
/// `gamma = (-r - sin)/8`, with `cos, sin` of `2 pi theta` and `r = 2|sin(pi theta)|`.
pub fn isely_scalar_data() -> ScalarData {
    let n = 1;
    let c = AlgebraElement::cos(n, 0);
    let s = AlgebraElement::sin(n, 0);
    let r = AlgebraElement::r(n, 0);
    let q = |k| GaussRational::ratio(1, k);
    ScalarData {
        a: (&AlgebraElement::int(n, 3) + &c).scale(&q(4)),
        b: s.scale(&q(4)),
        alpha: (&AlgebraElement::one(n) - &c).scale(&q(8)),
        beta: (&r - &s).scale(&q(8)),
        gamma: (&(-&r) - &s).scale(&q(8)),
    }
}

/// The pair `(X0, X1)` and its assembled projection `P_I(theta, phi)` in two variables.
pub fn build_isely() -> (RieffelPair, MatrixAlg) {
    let pair = isely_scalar_data().pair();
    let p = assemble_p(&pair);
    (pair, p)
}

/// `P_I` written directly in closed form (not through the pair):
/// `1/4 [[4 - (1-cos t)(1-cos f), sin t (1-cos f) + i sin f r], [conj, (1-cos t)(1-cos f)]]`.
pub fn isely_closed_form() -> MatrixAlg {
    let n = 2;
    let one = AlgebraElement::one(n);
    let ct = &one - &AlgebraElement::cos(n, 0);
    let cf = &one - &AlgebraElement::cos(n, 1);
    let st = AlgebraElement::sin(n, 0);
    let sf = AlgebraElement::sin(n, 1);
    let r = AlgebraElement::r(n, 0);
    let i = AlgebraElement::imag_unit(n);
    let prod = &ct * &cf;
    let real_part = &st * &cf;
    let imag_part = &(&i * &sf) * &r;
    let q = GaussRational::ratio(1, 4);
    MatrixAlg {
        entries: [
            [(&AlgebraElement::int(n, 4) - &prod).scale(&q), (&real_part + &imag_part).scale(&q)],
            [(&real_part - &imag_part).scale(&q), prod.scale(&q)],
        ],
    }
}

/// `U_I(theta, phi, psi) = P_I(theta, phi) w + (1 - P_I(theta, phi))`, `w = s_3`, with the exact
/// unitarity checks.
pub fn build_u_i() -> (MatrixAlg, Verdict) {
    let n = 3;
    let (_, p) = build_isely();
    let p = p.extend(n);
    let w = AlgebraElement::s(n, 2);
    let u = p.scale_by(&w).add(&MatrixAlg::identity(n).sub(&p));
    let verdict = check_unitary(&u);
    (u, verdict)
}

pub fn check_unitary(u: &MatrixAlg) -> Verdict {
    let id = MatrixAlg::identity(u.n());
    let us = u.adjoint();
    let mut v = Verdict { passed: true, checks: Vec::new() };
    v.push_matrix("UU*=1", u.mul(&us).sub(&id));
    v.push_matrix("U*U=1", us.mul(u).sub(&id));
    v
}

/// `(U X0 U*, U X1 U*)` for an exactly unitary `U`. A constant `U` may be given in any number of
/// variables; it is lifted to the pair's variable count.
pub fn conjugate(p: &RieffelPair, u: &MatrixAlg) -> Result<RieffelPair, RieffelError> {
    let u = if u.n() == p.n() {
        u.clone()
    } else if is_constant(u) {
        u.map(|e| AlgebraElement::constant(p.n(), e.as_constant().unwrap()))
    } else {
        return Err(AlgebraError::VariableCount { left: p.n(), right: u.n() }.into());
    };
    let check = check_unitary(&u);
    if !check.passed {
        let which: Vec<_> = check.failed().map(|c| c.identity.clone()).collect();
        return Err(RieffelError::NotUnitary(which.join(", ")));
    }
    let us = u.adjoint();
    Ok(RieffelPair { x0: u.mul(&p.x0).mul(&us), x1: u.mul(&p.x1).mul(&us) })
}

fn is_constant(m: &MatrixAlg) -> bool {
    m.entries.iter().flatten().all(|e| e.as_constant().is_some())
}

/// Trivial-type data over one variable: `a = (2 - s - s^{-1})/4 = sin^2(pi theta)`,
/// `beta = sin(2 pi theta)/2`, so that `a = a^2 + |beta|^2` holds exactly.
pub fn trivial_type_data() -> ScalarData {
    let n = 1;
    let z = AlgebraElement::zero(n);
    ScalarData {
        a: AlgebraElement::two_minus_s_sinv(n, 0).scale(&GaussRational::ratio(1, 4)),
        b: z.clone(),
        alpha: z.clone(),
        beta: AlgebraElement::sin(n, 0).scale(&GaussRational::ratio(1, 2)),
        gamma: z,
    }
}

/// The constant trivial-type data `a = 1/2`, `beta = 1/2`.
pub fn constant_trivial_data() -> ScalarData {
    let n = 1;
    let z = AlgebraElement::zero(n);
    ScalarData {
        a: AlgebraElement::ratio(n, 1, 2),
        b: z.clone(),
        alpha: z.clone(),
        beta: AlgebraElement::ratio(n, 1, 2),
        gamma: z,
    }
}

/// The diagonal pair on `[0, 1]` built from half-angle functions, and the rotation family that
/// carries it to the periodic pair:
/// `X0cal = diag(sin^2(pi t/2), cos^2(pi t/2))`, `X1cal = [[0, sin(pi t/2)cos(pi t/2)], [0, 0]]`,
/// `U_t = [[sin, cos], [-cos, sin]](pi t/2)`.
pub fn half_angle_pair(theta: f64) -> (CMat2, CMat2, CMat2) {
    let h = std::f64::consts::FRAC_PI_2 * theta;
    let (sn, cs) = h.sin_cos();
    let x0 = CMat2::from_real([[sn * sn, 0.0], [0.0, cs * cs]]);
    let x1 = CMat2::from_real([[0.0, sn * cs], [0.0, 0.0]]);
    let u = CMat2::from_real([[sn, cs], [-cs, sn]]);
    (x0, x1, u)
}

/// Largest entrywise deviation, over `samples` points of `[0, 1]`, between the rotated
/// half-angle pair `(U X0cal U*, U X1cal U*)` and the evaluated exact pair.
pub fn half_angle_reconstruction_residual(pair: &RieffelPair, samples: usize) -> f64 {
    (0..=samples)
        .map(|j| {
            let t = j as f64 / samples as f64;
            let (x0c, x1c, u) = half_angle_pair(t);
            let ud = u.adjoint();
            let d0 = (u * x0c * ud - pair.x0.eval(&[t])).max_abs();
            let d1 = (u * x1c * ud - pair.x1.eval(&[t])).max_abs();
            d0.max(d1)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr_in;

    fn el(text: &str, n: usize) -> AlgebraElement {
        parse_expr_in(text, n).unwrap()
    }

    #[test]
    fn constant_e11_is_projection() {
        assert!(check_projection(&MatrixAlg::e11(2), true).passed);
    }

    #[test]
    fn isely_projection_passes() {
        let (_, p) = build_isely();
        let v = check_projection(&p, true);
        assert!(v.passed, "{v:?}");
        assert_eq!(v.checks.len(), 4);
    }

    #[test]
    fn x0_alone_is_not_projection() {
        let (pair, _) = build_isely();
        let v = check_projection(&pair.x0, false);
        assert!(!v.passed);
        assert!(v.get("P=P*").unwrap().holds);
        assert!(!v.get("P^2=P").unwrap().holds);
        // eigenvalues at theta = 1/4: X0 = [[3/4, 1/4], [1/4, 1/4]]
        let m = pair.x0.eval(&[0.25]);
        let (tr, det) = (m.trace().re, m.det().re);
        let disc = (tr * tr - 4.0 * det).sqrt();
        for ev in [(tr + disc) / 2.0, (tr - disc) / 2.0] {
            assert!(ev.abs() > 1e-3 && (ev - 1.0).abs() > 1e-3, "{ev}");
        }
    }

    #[test]
    fn isely_pair_is_rieffel() {
        let (pair, _) = build_isely();
        let v = check_rieffel(&pair);
        assert!(v.passed, "{v:?}");
    }

    #[test]
    fn trivial_pairs_are_rieffel() {
        assert!(check_rieffel(&trivial_type_data().pair()).passed);
        assert!(check_rieffel(&constant_trivial_data().pair()).passed);
    }

    #[test]
    fn x1_equal_x0_fails_nilpotency() {
        let (pair, _) = build_isely();
        let bad = RieffelPair { x0: pair.x0.clone(), x1: pair.x0.clone() };
        let v = check_rieffel(&bad);
        assert!(!v.passed);
        assert!(!v.get("X1^2=0").unwrap().holds);
        assert_ne!(v.get("X1^2=0").unwrap().residual, "0");
    }

    #[test]
    fn prop_main1_examples() {
        let d = isely_scalar_data();
        let v = check_prop_main1(&d);
        assert!(v.passed, "{v:?}");
        let bg = &d.beta * &d.gamma;
        let want = el("-(1/64)*(1 - (1/2)*(s1 + s1^-1))^2", 1);
        assert_eq!(bg, want);
        assert_eq!(bg, -(&d.alpha * &d.alpha));

        let one = ScalarData::new(
            AlgebraElement::one(1),
            AlgebraElement::zero(1),
            AlgebraElement::zero(1),
            AlgebraElement::zero(1),
            AlgebraElement::zero(1),
        )
        .unwrap();
        let v = check_prop_main1(&one);
        assert!(!v.passed);
        assert_eq!(v.failed().map(|c| c.identity.as_str()).collect::<Vec<_>>(), ["beta,gamma not both 0"]);

        assert!(check_prop_main1(&constant_trivial_data()).passed);
        assert!(check_prop_main1(&trivial_type_data()).passed);
    }

    #[test]
    fn assembled_pair_matches_closed_form() {
        let (_, p) = build_isely();
        assert_eq!(p, isely_closed_form());
    }

    #[test]
    fn isely_boundary_values() {
        let (_, p) = build_isely();
        for &t in &[0.0, 0.13, 0.5, 0.71] {
            assert!((p.eval(&[t, 0.0]) - CMat2::e11()).max_abs() < 1e-12);
            assert!((p.eval(&[0.0, t]) - CMat2::e11()).max_abs() < 1e-12);
        }
        let corner = p.eval(&[0.5, 0.5]);
        assert!((corner - CMat2::diag(0.0.into(), 1.0.into())).max_abs() < 1e-12);
    }

    #[test]
    fn assemble_simple_cases() {
        let pair = RieffelPair::new(MatrixAlg::e11(1), MatrixAlg::zero(1)).unwrap();
        assert_eq!(assemble_p(&pair), MatrixAlg::e11(2));

        let d = trivial_type_data();
        let p = assemble_p(&d.pair());
        let v = AlgebraElement::s(2, 1);
        let a = d.a.extend(2);
        let beta = d.beta.extend(2);
        let want = MatrixAlg::from_rows(
            a.clone(),
            &beta * &v,
            &beta.star() * &AlgebraElement::s_inv(2, 1),
            &AlgebraElement::one(2) - &a,
        )
        .unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn u_i_is_unitary() {
        let (u, v) = build_u_i();
        assert!(v.passed, "{v:?}");
        assert!((u.eval(&[0.3, 0.6, 0.0]) - CMat2::identity()).max_abs() < 1e-12);
        let psi = 0.27;
        let want = CMat2::diag(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * psi), 1.0.into());
        assert!((u.eval(&[0.0, 0.0, psi]) - want).max_abs() < 1e-12);
    }

    #[test]
    fn conjugation_preserves_rieffel() {
        let (pair, _) = build_isely();
        let same = conjugate(&pair, &MatrixAlg::identity(1)).unwrap();
        assert_eq!(same, pair);
        let swap = MatrixAlg::from_rows(
            AlgebraElement::zero(1),
            AlgebraElement::one(1),
            AlgebraElement::one(1),
            AlgebraElement::zero(1),
        )
        .unwrap();
        let c = conjugate(&pair, &swap).unwrap();
        assert!(check_rieffel(&c).passed);
        assert_ne!(c, pair);
    }

    #[test]
    fn conjugation_rejects_non_unitary() {
        let (pair, _) = build_isely();
        let m = MatrixAlg::diag(AlgebraElement::int(1, 2), AlgebraElement::one(1));
        assert!(matches!(conjugate(&pair, &m), Err(RieffelError::NotUnitary(_))));
    }

    #[test]
    fn rotation_family_reproduces_pair() {
        let (pair, _) = build_isely();
        assert!(half_angle_reconstruction_residual(&pair, 1000) <= 1e-12);
    }

    #[test]
    fn trace_of_assembly_is_trace_of_x0() {
        let (pair, p) = build_isely();
        assert_eq!(p.trace(), pair.x0.trace().extend(2));
    }

    #[test]
    fn x0_closed_form() {
        let (pair, _) = build_isely();
        let want = MatrixAlg::from_rows(
            el("(1/4)*(3 + (1/2)*(s1 + s1^-1))", 1),
            el("(1/4)*(s1 - s1^-1)/(2*i)", 1),
            el("(1/4)*(s1 - s1^-1)/(2*i)", 1),
            el("(1/4)*(1 - (1/2)*(s1 + s1^-1))", 1),
        )
        .unwrap();
        assert_eq!(pair.x0, want);
    }
}
