//! Generators of `K_0` and `K_1` of `C(T^3)` built from `P_I`, checked through the three
//! evaluation maps onto coordinate 2-tori.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{chern_number, winding_number, InvariantError};
use crate::algebra::AlgebraElement;
use crate::field::{CMat2, SampledField, TorusGrid};
use crate::rieffel::{build_isely, MatrixAlg};

/// A coordinate 2-torus of `T^3 = {(theta, phi, psi)}`, with its axes in the listed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Face {
    ThetaPhi,
    PhiPsi,
    PsiTheta,
}

impl Face {
    pub const ALL: [Face; 3] = [Face::ThetaPhi, Face::PhiPsi, Face::PsiTheta];

    /// The two `T^3` axes, in output order.
    pub fn axes(self) -> [usize; 2] {
        match self {
            Face::ThetaPhi => [0, 1],
            Face::PhiPsi => [1, 2],
            Face::PsiTheta => [2, 0],
        }
    }

    /// The coordinate set to zero.
    pub fn omitted(self) -> usize {
        match self {
            Face::ThetaPhi => 2,
            Face::PhiPsi => 0,
            Face::PsiTheta => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Face::ThetaPhi => "theta-phi",
            Face::PhiPsi => "phi-psi",
            Face::PsiTheta => "psi-theta",
        }
    }
}

/// Restriction of a sampled `T^3` field to a face, taking index 0 on the omitted axis (the
/// coordinate value `0` when the grid origin is `0`).
pub fn evaluation_map(
    field: &SampledField<CMat2>,
    face: Face,
) -> Result<SampledField<CMat2>, InvariantError> {
    let g = &field.grid;
    if g.dims() != 3 {
        return Err(InvariantError::WrongDimension { expected: 3, got: g.dims() });
    }
    let [p, q] = face.axes();
    let out = TorusGrid::with_origin(
        &[g.sizes()[p], g.sizes()[q]],
        &[g.origin()[p], g.origin()[q]],
    )?;
    let values = (0..out.len())
        .map(|j| {
            let ij = out.multi_index(j);
            let mut idx = [0isize; 3];
            idx[p] = ij[0] as isize;
            idx[q] = ij[1] as isize;
            *field.at(&idx)
        })
        .collect();
    Ok(SampledField { grid: out, values })
}

/// The same restriction on exact matrices in three variables, producing two variables ordered
/// as the face axes.
pub fn symbolic_evaluation_map(m: &MatrixAlg, face: Face) -> MatrixAlg {
    assert_eq!(m.n(), 3, "evaluation maps act on three variables");
    let r = m.restrict_to_zero(face.omitted());
    match face {
        Face::ThetaPhi | Face::PhiPsi => r,
        // Remaining variables are (theta, psi); swap to (psi, theta).
        Face::PsiTheta => r.reindex(2, &[1, 0]),
    }
}

/// `P_I` placed on the given face of `T^3`: `P_I(theta, phi)`, `P_I(phi, psi)` or
/// `P_I(psi, theta)`.
pub fn isely_on_t3(face: Face) -> MatrixAlg {
    let (_, p) = build_isely();
    p.reindex(3, &face.axes())
}

/// `(1 / 24 pi^2) * integral of tr((U* dU)^3)` over `T^3`, by the midpoint rule on an `n^3` grid
/// with central differences of step `h`.
pub fn odd_winding_integral<F>(u: F, n: usize, h: f64) -> f64
where
    F: Fn(&[f64; 3]) -> CMat2 + Sync,
{
    let cell = 1.0 / n as f64;
    let densities: Vec<f64> = (0..n * n * n)
        .into_par_iter()
        .map(|j| {
            let x = [
                ((j / (n * n)) as f64 + 0.5) * cell,
                ((j / n % n) as f64 + 0.5) * cell,
                ((j % n) as f64 + 0.5) * cell,
            ];
            let ustar = u(&x).adjoint();
            let a: Vec<CMat2> = (0..3)
                .map(|k| {
                    let (mut xp, mut xm) = (x, x);
                    xp[k] += h;
                    xm[k] -= h;
                    ustar * (u(&xp) - u(&xm)).scale(Complex64::new(0.5 / h, 0.0))
                })
                .collect();
            // Cyclicity of the trace collapses the six signed orderings to 3 tr(A1 [A2, A3]).
            let comm = a[1] * a[2] - a[2] * a[1];
            3.0 * (a[0] * comm).trace().re
        })
        .collect();
    let total: f64 = densities.iter().sum();
    total * cell.powi(3) / (24.0 * PI * PI)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K3Report {
    /// `beta_matrix[i][j]`: Chern number of the `i`-th projection restricted to face `j`, both in
    /// the order theta-phi, phi-psi, psi-theta.
    pub beta_matrix: [[i64; 3]; 3],
    /// Winding numbers of `exp(2 pi i theta)`, `exp(2 pi i phi)`, `exp(2 pi i psi)`.
    pub coordinate_windings: [i64; 3],
    pub chern_p_i: i64,
    /// `chern(P_I) * winding(exp(2 pi i psi))`.
    pub u_i_invariant: i64,
    /// Direct evaluation of the degree-3 integral for `U_I`, when requested.
    pub odd_integral: Option<f64>,
    pub odd_grid: Option<usize>,
    pub grid: usize,
}

/// Central-difference step for the odd integral.
const ODD_STEP: f64 = 1e-5;

pub fn k3_report(n: usize, odd_n: Option<usize>) -> Result<K3Report, InvariantError> {
    let square = TorusGrid::square(n)?;
    let mut beta = [[0i64; 3]; 3];
    for (i, &pf) in Face::ALL.iter().enumerate() {
        let p = isely_on_t3(pf);
        for (j, &ef) in Face::ALL.iter().enumerate() {
            let r = symbolic_evaluation_map(&p, ef);
            let field = square.sample(|x| r.eval(x));
            beta[i][j] = chern_number(&field)?.chern;
        }
    }
    let circle = TorusGrid::circle(n)?;
    let mut windings = [0i64; 3];
    for (k, w) in windings.iter_mut().enumerate() {
        let s = AlgebraElement::s(3, k);
        let curve = circle.sample(|t| {
            let mut x = [0.0; 3];
            x[k] = t[0];
            s.eval(&x)
        });
        *w = winding_number(&curve)?;
    }
    let chern_p_i = beta[0][0];
    let odd_integral = odd_n.map(|m| {
        let (u, _) = crate::rieffel::build_u_i();
        odd_winding_integral(|x| u.eval(x), m, ODD_STEP)
    });
    Ok(K3Report {
        beta_matrix: beta,
        coordinate_windings: windings,
        chern_p_i,
        u_i_invariant: chern_p_i * windings[2],
        odd_integral,
        odd_grid: odd_n,
        grid: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_maps_of_p_i() {
        let p = isely_on_t3(Face::ThetaPhi);
        let (_, p2) = build_isely();
        assert_eq!(symbolic_evaluation_map(&p, Face::ThetaPhi), p2);
        assert_eq!(symbolic_evaluation_map(&p, Face::PhiPsi), MatrixAlg::e11(2));
        assert_eq!(symbolic_evaluation_map(&p, Face::PsiTheta), MatrixAlg::e11(2));
        let q = isely_on_t3(Face::PhiPsi);
        assert_eq!(symbolic_evaluation_map(&q, Face::PsiTheta), MatrixAlg::e11(2));
        assert_eq!(symbolic_evaluation_map(&q, Face::PhiPsi), p2);
        let r = isely_on_t3(Face::PsiTheta);
        assert_eq!(symbolic_evaluation_map(&r, Face::PsiTheta), p2);
    }

    #[test]
    fn sampled_and_symbolic_agree() {
        let cube = TorusGrid::cube(8).unwrap();
        for pf in Face::ALL {
            let p = isely_on_t3(pf);
            let field = cube.sample(|x| p.eval(x));
            for ef in Face::ALL {
                let sampled = evaluation_map(&field, ef).unwrap();
                let exact = symbolic_evaluation_map(&p, ef);
                for (j, v) in sampled.values.iter().enumerate() {
                    let x = sampled.grid.point(j);
                    assert!((*v - exact.eval(&x)).max_abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn constant_unitary_has_zero_degree() {
        let v = odd_winding_integral(|_| CMat2::identity(), 8, 1e-4);
        assert!(v.abs() < 1e-12);
    }
}
