use ktorus::banach::{CoeffSeq, Weight};
use num_complex::Complex64;
use proptest::prelude::*;

fn seq() -> impl Strategy<Value = CoeffSeq> {
    (-6i64..=6, prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..8)).prop_map(|(low, cs)| {
        CoeffSeq::from_dense(low, cs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    })
}

fn weight() -> impl Strategy<Value = Weight> {
    (1.0f64..3.0).prop_map(|a| Weight::new(a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn submultiplicative(x in seq(), y in seq(), w in weight()) {
        let lhs = x.mul(&y).weighted_norm(w);
        let rhs = x.weighted_norm(w) * y.weighted_norm(w);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn involution_is_isometric(x in seq(), w in weight()) {
        let a = x.weighted_norm(w);
        let b = x.star().weighted_norm(w);
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn norm_chain(x in seq(), w in weight()) {
        let weighted = x.weighted_norm(w);
        let l1 = x.l1_norm();
        let sup = x.sup_norm_on_grid(64);
        prop_assert!(weighted >= l1 - 1e-12);
        prop_assert!(l1 >= sup - 1e-12);
    }

    #[test]
    fn weight_is_submultiplicative(a in 1.0f64..3.0, j in -20i64..20, k in -20i64..20) {
        let w = Weight::new(a).unwrap();
        prop_assert!(w.at(j + k) <= w.at(j) * w.at(k) * (1.0 + 1e-12));
    }

    #[test]
    fn evaluation_is_multiplicative(x in seq(), y in seq(), t in 0.0f64..1.0) {
        let lhs = x.mul(&y).eval(t);
        let rhs = x.eval(t) * y.eval(t);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }
}
