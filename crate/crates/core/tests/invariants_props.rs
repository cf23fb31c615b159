use std::f64::consts::PI;

use ktorus::field::{CMat2, TorusGrid};
use ktorus::invariants::{
    boundary_class, build_loring, chern_number, loring_profile, winding_number, SampledScalarData,
};
use ktorus::rieffel::{
    build_isely, conjugate, isely_scalar_data, trivial_type_data, MatrixAlg, ScalarData,
};
use ktorus::{parse_expr_in, AlgebraElement};
use num_complex::Complex64;
use proptest::prelude::*;

fn circle(n: usize) -> TorusGrid {
    TorusGrid::circle(n).unwrap()
}

fn constant_matrix(entries: [[&str; 2]; 2]) -> MatrixAlg {
    MatrixAlg::new(entries.map(|row| row.map(|e| parse_expr_in(e, 1).unwrap()))).unwrap()
}

fn exact_unitaries() -> Vec<MatrixAlg> {
    vec![
        constant_matrix([["0", "1"], ["1", "0"]]),
        constant_matrix([["3/5", "4/5*i"], ["4/5*i", "3/5"]]),
        constant_matrix([["1", "0"], ["0", "i"]]),
        constant_matrix([["(1+i)/2", "(1-i)/2"], ["(1-i)/2", "(1+i)/2"]]),
    ]
}

#[test]
fn boundary_is_conjugation_invariant() {
    for (data, expected) in [(isely_scalar_data(), 1), (trivial_type_data(), 0)] {
        for u in exact_unitaries() {
            let pair = conjugate(&data.pair(), &u).unwrap();
            let d = ScalarData::from_pair(&pair).expect("conjugated pair keeps the scalar shape");
            let sampled = SampledScalarData::from_exact(&d, &circle(256)).unwrap();
            assert_eq!(boundary_class(&sampled).unwrap().boundary, expected);
        }
    }
}

#[test]
fn continuity_improves_with_refinement() {
    let datasets: Vec<Box<dyn Fn(usize) -> SampledScalarData>> = vec![
        Box::new(|n| SampledScalarData::from_exact(&isely_scalar_data(), &circle(n)).unwrap()),
        Box::new(|n| SampledScalarData::from_exact(&trivial_type_data(), &circle(n)).unwrap()),
        Box::new(|n| loring_profile(&circle(n)).unwrap()),
    ];
    for make in datasets {
        let jumps: Vec<f64> =
            [256, 512, 1024].iter().map(|&n| boundary_class(&make(n)).unwrap().max_jump).collect();
        assert!(jumps[0] > jumps[1] && jumps[1] > jumps[2], "{jumps:?}");
        assert!(jumps[2] < 0.02);
    }
}

#[test]
fn chern_stable_under_doubling() {
    let (_, p) = build_isely();
    for n in [64, 128, 256] {
        let g = TorusGrid::square(n).unwrap();
        assert_eq!(chern_number(&g.sample(|x| p.eval(x))).unwrap().chern, 1);
        assert_eq!(chern_number(&build_loring(&g).unwrap().field).unwrap().chern, 1);
    }
}

fn unitary(a: f64, b: f64, c: f64) -> CMat2 {
    let (ca, sa) = a.sin_cos();
    let e = |t: f64| Complex64::from_polar(1.0, t);
    CMat2([[e(b) * ca, e(c) * sa], [-e(-c) * sa, e(-b) * ca]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn winding_refinement(k in -4i64..=4, eps in 0.0f64..0.9, m in 1i64..4) {
        let f = move |t: f64| {
            let base = Complex64::from_polar(1.0, 2.0 * PI * k as f64 * t);
            base * (Complex64::new(1.0, 0.0) + Complex64::from_polar(eps, 2.0 * PI * m as f64 * t))
        };
        let a = winding_number(&circle(128).sample(|p| f(p[0]))).unwrap();
        let b = winding_number(&circle(256).sample(|p| f(p[0]))).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, k);
    }

    #[test]
    fn chern_invariances(
        a in 0.0f64..PI, b in 0.0f64..(2.0 * PI), c in 0.0f64..(2.0 * PI),
        o0 in -1.0f64..1.0, o1 in -1.0f64..1.0,
    ) {
        let (_, p) = build_isely();
        let w = unitary(a, b, c);
        let g = TorusGrid::square(32).unwrap();
        let conj = g.sample(|x| w * p.eval(x) * w.adjoint());
        prop_assert_eq!(chern_number(&conj).unwrap().chern, 1);
        let shifted = TorusGrid::with_origin(&[32, 32], &[o0, o1]).unwrap();
        prop_assert_eq!(chern_number(&shifted.sample(|x| p.eval(x))).unwrap().chern, 1);
        let complement = g.sample(|x| CMat2::identity() - p.eval(x));
        prop_assert_eq!(chern_number(&complement).unwrap().chern, -1);
    }
}

#[test]
fn coordinate_unitary_windings() {
    for text in ["s1", "s1^-1", "s1^3", "-s1^2"] {
        let e: AlgebraElement = parse_expr_in(text, 1).unwrap();
        let w = winding_number(&circle(64).sample(|p| e.eval(p))).unwrap();
        let want = match text {
            "s1" => 1,
            "s1^-1" => -1,
            "s1^3" => 3,
            _ => 2,
        };
        assert_eq!(w, want, "{text}");
    }
}
