use std::f64::consts::PI;

use ktorus::funcalc::{apply_isely, block_diag2, norm, sqrt_psd, CMatrix};
use ktorus::rieffel::build_isely;
use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, m: usize) -> CMatrix {
    CMatrix::from_fn(m, m, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Unitary factor of a QR decomposition.
fn random_unitary(rng: &mut ChaCha8Rng, m: usize) -> CMatrix {
    random_matrix(rng, m).qr().q()
}

fn diag_phases(phases: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_iterator(
        phases.len(),
        phases.iter().map(|&t| Complex64::from_polar(1.0, 2.0 * PI * t)),
    ))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psd_square_root(seed in any::<u64>(), m in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, m);
        let h = &a * a.adjoint();
        let r = sqrt_psd(&h).unwrap();
        prop_assert!(norm(&(&r * &r - &h)) <= 1e-9);
        prop_assert!(norm(&(&r - r.adjoint())) <= 1e-12);
    }

    #[test]
    fn conjugation_equivariance(
        seed in any::<u64>(),
        t in prop::collection::vec(0.0f64..1.0, 4),
        f in prop::collection::vec(0.0f64..1.0, 4),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_unitary(&mut rng, 4);
        let (u, v) = (diag_phases(&t), diag_phases(&f));
        let p = apply_isely(&u, &v).unwrap().p;
        let q = apply_isely(&(&w * &u * w.adjoint()), &(&w * &v * w.adjoint())).unwrap().p;
        let ww = block_diag2(&w);
        prop_assert!(norm(&(q - &ww * p * ww.adjoint())) <= 1e-9);
    }
}

#[test]
fn diagonal_inputs_split_into_scalar_evaluations() {
    let (_, p) = build_isely();
    let t = [0.1, 0.35, 0.8];
    let f = [0.6, 0.05, 0.45];
    let big = apply_isely(&diag_phases(&t), &diag_phases(&f)).unwrap().p;
    for k in 0..3 {
        let want = p.eval(&[t[k], f[k]]);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let got = big[(i * 3 + k, j * 3 + k)];
            assert!((got - want.0[i][j]).norm() < 1e-12);
        }
    }
}
