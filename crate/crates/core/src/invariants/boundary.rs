//! The boundary map of a rank-one Rieffel pair over the circle. On the support of `X1` the
//! matrix `X0` acts on the range of `X1` by a scalar `f`; with `f = 0` off the support, the class
//! is that of `(1 - l) + exp(2 pi i f) l`, `l` the projection onto the range of `X1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{winding_number, InvariantError};
use crate::field::{CMat2, SampledField, TorusGrid};
use crate::rieffel::ScalarData;

/// `X1(y)` counts as nonzero when `|beta|` or `|gamma|` exceeds this.
pub const EPS_SUPPORT: f64 = 1e-9;

/// Pointwise tolerance for the scalar identities, branch agreement and self-adjointness.
pub const MAIN1_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarSample {
    pub a: Complex64,
    pub b: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl ScalarSample {
    pub fn from_array([a, b, alpha, beta, gamma]: [Complex64; 5]) -> Self {
        Self { a, b, alpha, beta, gamma }
    }

    pub fn x0(&self) -> CMat2 {
        CMat2([[self.a, self.b], [self.b.conj(), 1.0 - self.a]])
    }

    pub fn x1(&self) -> CMat2 {
        CMat2([[self.alpha, self.beta], [self.gamma, -self.alpha]])
    }

    pub fn in_support(&self) -> bool {
        self.beta.norm() > EPS_SUPPORT || self.gamma.norm() > EPS_SUPPORT
    }

    /// Residuals of the four scalar identities, in the order
    /// `a = a*`, `beta gamma = -alpha^2`, `(2a-1)alpha + b gamma + conj(b) beta = 0`,
    /// `a = a^2 + |b|^2 + 2|alpha|^2 + |beta|^2 + |gamma|^2`.
    pub fn main1_residuals(&self) -> [f64; 4] {
        let (a, b, al, be, ga) = (self.a, self.b, self.alpha, self.beta, self.gamma);
        [
            a.im.abs(),
            (be * ga + al * al).norm(),
            ((2.0 * a - 1.0) * al + b * ga + b.conj() * be).norm(),
            (a - a * a
                - b.norm_sqr()
                - 2.0 * al.norm_sqr()
                - be.norm_sqr()
                - ga.norm_sqr())
            .norm(),
        ]
    }
}

const MAIN1_LABELS: [&str; 4] = [
    "a=a*",
    "beta*gamma=-alpha^2",
    "(2a-1)alpha+b*gamma+conj(b)*beta=0",
    "a=a^2+|b|^2+2|alpha|^2+|beta|^2+|gamma|^2",
];

/// `(a, b, alpha, beta, gamma)` sampled on a circle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledScalarData {
    pub grid: TorusGrid,
    pub samples: Vec<ScalarSample>,
}

impl SampledScalarData {
    pub fn from_exact(d: &ScalarData, grid: &TorusGrid) -> Result<Self, InvariantError> {
        if grid.dims() != d.n() {
            return Err(InvariantError::WrongDimension { expected: d.n(), got: grid.dims() });
        }
        let samples = grid.sample(|p| ScalarSample::from_array(d.eval(p))).values;
        Ok(Self { grid: grid.clone(), samples })
    }

    pub fn from_samples(grid: &TorusGrid, samples: Vec<ScalarSample>) -> Result<Self, InvariantError> {
        if samples.len() != grid.len() {
            return Err(InvariantError::NotRieffel(format!(
                "{} samples for a grid of {} nodes",
                samples.len(),
                grid.len()
            )));
        }
        Ok(Self { grid: grid.clone(), samples })
    }

    fn field<T: Send>(&self, f: impl Fn(&ScalarSample) -> T) -> SampledField<T> {
        SampledField { grid: self.grid.clone(), values: self.samples.iter().map(f).collect() }
    }
}

/// `f = a - alpha b / beta` on `|beta| > eps`, `f = 1 - a + alpha conj(b) / gamma` on
/// `|gamma| > eps`, `0` elsewhere. Where both apply they must agree.
pub fn support_f(d: &SampledScalarData) -> Result<SampledField<f64>, InvariantError> {
    Ok(support_f_with_gap(d)?.0)
}

fn support_f_with_gap(d: &SampledScalarData) -> Result<(SampledField<f64>, f64), InvariantError> {
    let mut values = Vec::with_capacity(d.samples.len());
    let mut max_gap = 0.0f64;
    for (node, s) in d.samples.iter().enumerate() {
        let from_beta = (s.beta.norm() > EPS_SUPPORT).then(|| s.a - s.alpha * s.b / s.beta);
        let from_gamma =
            (s.gamma.norm() > EPS_SUPPORT).then(|| 1.0 - s.a + s.alpha * s.b.conj() / s.gamma);
        let f = match (from_beta, from_gamma) {
            (Some(x), Some(y)) => {
                let gap = (x - y).norm();
                if !(gap <= MAIN1_TOLERANCE) {
                    return Err(InvariantError::BranchDisagreement { node, gap });
                }
                max_gap = max_gap.max(gap);
                x
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => Complex64::new(0.0, 0.0),
        };
        values.push(f.re);
    }
    Ok((SampledField { grid: d.grid.clone(), values }, max_gap))
}

/// The orthogonal projection onto the range of `X1(y)`, zero off the numerical support.
pub fn left_support(d: &SampledScalarData) -> SampledField<CMat2> {
    d.field(range_projection)
}

fn range_projection(s: &ScalarSample) -> CMat2 {
    if !s.in_support() {
        return CMat2::zero();
    }
    let x1 = s.x1();
    let (c0, c1) = (x1.column(0), x1.column(1));
    let n0 = c0[0].norm_sqr() + c0[1].norm_sqr();
    let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
    let (v, n) = if n0 >= n1 { (c0, n0) } else { (c1, n1) };
    let v = [v[0] / n.sqrt(), v[1] / n.sqrt()];
    CMat2([[v[0] * v[0].conj(), v[0] * v[1].conj()], [v[1] * v[0].conj(), v[1] * v[1].conj()]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SupportShape {
    /// A union of `count` disjoint open arcs.
    Arcs { count: usize },
    FullCircle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryReport {
    /// The boundary class as an integer in `K_1(C(S^1)) = Z`.
    pub boundary: i64,
    /// Winding number of `u = exp(2 pi i f)`.
    pub winding_u: i64,
    /// Winding number of `det((1 - l) + u l)`.
    pub det_winding: i64,
    pub support: SupportShape,
    pub support_nodes: usize,
    /// Largest `|l(y) - l(y')|` over support nodes.
    pub left_support_variation: f64,
    pub max_main1_residual: f64,
    pub max_branch_gap: f64,
    /// Largest `|X0 l - (X0 l)*|`.
    pub max_self_adjoint_residual: f64,
    /// Largest `|X0 l - f l|`.
    pub max_eigen_residual: f64,
    /// Largest `|u(y_{j+1}) - u(y_j)|`.
    pub max_jump: f64,
    pub jump_tolerance: f64,
    pub grid: Vec<usize>,
}

/// Neighbour jumps of `u` must stay below `min(50 / N, 1)`.
pub fn jump_tolerance(n: usize) -> f64 {
    (50.0 / n as f64).min(1.0)
}

pub fn boundary_class(d: &SampledScalarData) -> Result<BoundaryReport, InvariantError> {
    let grid = &d.grid;
    if grid.dims() != 1 {
        return Err(InvariantError::WrongDimension { expected: 1, got: grid.dims() });
    }
    let n = grid.len();
    let mut max_main1 = 0.0f64;
    for (node, s) in d.samples.iter().enumerate() {
        for (label, r) in MAIN1_LABELS.iter().zip(s.main1_residuals()) {
            if !(r <= MAIN1_TOLERANCE) {
                return Err(InvariantError::NotRieffel(format!(
                    "{label} fails at node {node} (residual {r:e})"
                )));
            }
            max_main1 = max_main1.max(r);
        }
    }
    let support: Vec<bool> = d.samples.iter().map(ScalarSample::in_support).collect();
    let support_nodes = support.iter().filter(|&&x| x).count();
    if support_nodes == 0 {
        return Err(InvariantError::NotRieffel("beta and gamma vanish at every node".into()));
    }
    let shape = if support_nodes == n {
        SupportShape::FullCircle
    } else {
        let count = (0..n).filter(|&j| support[j] && !support[(j + n - 1) % n]).count();
        SupportShape::Arcs { count }
    };

    let (f, max_gap) = support_f_with_gap(d)?;
    let ell = left_support(d);
    let mut max_sa = 0.0f64;
    let mut max_eigen = 0.0f64;
    for (node, (s, (l, &fv))) in d.samples.iter().zip(ell.values.iter().zip(&f.values)).enumerate() {
        let x0l = s.x0() * *l;
        let sa = (x0l - x0l.adjoint()).max_abs();
        if !(sa <= MAIN1_TOLERANCE) {
            return Err(InvariantError::NotSelfAdjoint { node, residual: sa });
        }
        max_sa = max_sa.max(sa);
        max_eigen = max_eigen.max((x0l - l.scale(fv.into())).max_abs());
    }
    let first = support.iter().position(|&x| x).unwrap();
    let variation = (0..n)
        .filter(|&j| support[j])
        .map(|j| (ell.values[j] - ell.values[first]).max_abs())
        .fold(0.0, f64::max);

    let u = f.map(|&x| Complex64::from_polar(1.0, 2.0 * PI * x));
    let tolerance = jump_tolerance(n);
    let mut max_jump = 0.0f64;
    for node in 0..n {
        let jump = (u.values[(node + 1) % n] - u.values[node]).norm();
        if !(jump < tolerance) {
            return Err(InvariantError::Discontinuous { node, jump, tolerance });
        }
        max_jump = max_jump.max(jump);
    }
    let winding_u = winding_number(&u)?;
    let id = CMat2::identity();
    let det = SampledField {
        grid: grid.clone(),
        values: ell.values.iter().zip(&u.values).map(|(l, &z)| (id - *l + l.scale(z)).det()).collect(),
    };
    let det_winding = winding_number(&det)?;
    let boundary = match shape {
        SupportShape::Arcs { .. } => winding_u,
        SupportShape::FullCircle => det_winding,
    };
    Ok(BoundaryReport {
        boundary,
        winding_u,
        det_winding,
        support: shape,
        support_nodes,
        left_support_variation: variation,
        max_main1_residual: max_main1,
        max_branch_gap: max_gap,
        max_self_adjoint_residual: max_sa,
        max_eigen_residual: max_eigen,
        max_jump,
        jump_tolerance: tolerance,
        grid: grid.sizes().to_vec(),
    })
}
