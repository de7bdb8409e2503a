use minsurf::exprcore::{rat, realify, ClosedForm, GaussianRational as G};
use num_complex::Complex64;
use proptest::prelude::*;

type Term = (i64, i64, i64, i64, u32, u32);

fn term_strategy() -> impl Strategy<Value = Term> {
    (-4i64..=4, -4i64..=4, -3i64..=2, -3i64..=2, 0u32..=2, 0u32..=2)
}

fn build(terms: &[Term]) -> ClosedForm {
    terms.iter().fold(ClosedForm::zero(), |acc, &(re, im, a, b, c, d)| {
        let t = ClosedForm::pole_monomial(G::new(rat(re, 1), rat(im, 2)), a, b)
            .mul(&ClosedForm::log_minus().pow(c))
            .mul(&ClosedForm::log_plus().pow(d));
        acc.add(&t)
    })
}

fn member() -> impl Strategy<Value = ClosedForm> {
    prop::collection::vec(term_strategy(), 1..4).prop_map(|t| build(&t))
}

fn at(e: &ClosedForm, p: f64) -> Complex64 {
    e.eval(Complex64::new(p, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in member(), b in member(), c in member()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn derivatives_integrate_back(g in member()) {
        let e = g.differentiate();
        let f = e.antiderivative().expect("a derivative has an antiderivative in the class");
        prop_assert_eq!(f.differentiate(), e);
    }

    #[test]
    fn antiderivative_round_trip_when_it_exists(e in member()) {
        if let Ok(f) = e.antiderivative() {
            prop_assert_eq!(f.differentiate(), e);
        }
    }

    #[test]
    fn product_rule_rewrite(a in member(), b in member()) {
        let lhs = a.mul(&b).differentiate();
        let rhs = a.differentiate().mul(&b).add(&a.mul(&b.differentiate()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn root_factor_rewrites(a in member(), k in 1i64..4) {
        let pm = ClosedForm::pole_monomial(G::one(), k, 0);
        let pp = ClosedForm::pole_monomial(G::one(), 0, k);
        prop_assert_eq!(pm.mul(&pp), ClosedForm::one_plus_p2_pow(k));
        let back = a.mul(&pm).mul(&ClosedForm::pole_monomial(G::one(), -k, 0));
        prop_assert_eq!(back, a.clone());
        let via_atan = ClosedForm::arctan().scale(&G::new(rat(0, 1), rat(2, 1)));
        prop_assert_eq!(via_atan, ClosedForm::log_minus().sub(&ClosedForm::log_plus()));
    }

    #[test]
    fn zero_test_agrees_with_evaluation(a in member(), b in member()) {
        let d = a.sub(&b);
        let ps = [-2.3, -0.4, 0.7, 1.9, 3.1];
        let max = ps.iter().map(|&p| at(&d, p).norm()).fold(0.0, f64::max);
        if d.is_zero() {
            prop_assert!(max < 1e-9);
        } else {
            prop_assert!(max > 1e-9, "structurally nonzero difference vanished numerically: {:?}", d);
        }
    }

    #[test]
    fn conjugation_is_an_automorphism(a in member(), b in member()) {
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        prop_assert_eq!(a.differentiate().conj(), a.conj().differentiate());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn realify_agrees_numerically(x in member(), seed in any::<u64>()) {
        let e = x.add(&x.conj());
        let r = realify(&e).expect("symmetrized forms are real");
        prop_assert_eq!(r.to_closed_form(), e.clone());
        let mut state = seed;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let p = ((state >> 11) as f64 / (1u64 << 53) as f64) * 20.0 - 10.0;
            let v = at(&e, p);
            let w = r.eval(p);
            prop_assert!((v.re - w).abs() <= 1e-10 * (1.0 + w.abs()), "p={} {} vs {}", p, v.re, w);
            prop_assert!(v.im.abs() <= 1e-12 * (1.0 + w.abs()));
        }
    }
}
