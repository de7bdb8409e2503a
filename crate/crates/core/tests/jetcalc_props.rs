use minsurf::exprcore::{rat, ClosedForm, GaussianRational as G, QPoly};
use minsurf::hierarchy::{generate_symmetry, Branch, ChainSpec, ContactPolynomial, Parity};
use minsurf::jetcalc::{jacobi_bracket, EquationObject, JetExpr, JetIndex, JetSpace, JetVar};
use minsurf::numcheck::SamplePoint;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type E = JetExpr<BigRational>;

/// Variables of order at most `order`, coordinates included.
fn pool(n: usize, order: usize) -> Vec<JetVar> {
    let mut v: Vec<JetVar> = (0..n as u8).map(JetVar::X).collect();
    v.extend(JetIndex::all_up_to(n, order).into_iter().map(JetVar::U));
    v
}

/// Up to four monomials of degree at most `deg` over `pool(n, order)`,
/// divided by `L^m` with `m ≤ lmax`.
fn sized_expr(n: usize, order: usize, deg: usize, lmax: u32) -> impl Strategy<Value = E> {
    let vars = pool(n, order);
    let k = vars.len();
    let mono = (-3i64..=3, prop::collection::vec(0..k, 0..=deg));
    (prop::collection::vec(mono, 1..=4), 0u32..=lmax).prop_map(move |(ms, m)| {
        let num = ms.iter().fold(E::zero(n), |acc, (c, idx)| {
            let t = idx.iter().fold(E::int(n, *c), |t, &i| t.mul(&E::var(n, vars[i].clone())));
            acc.add(&t)
        });
        num.mul(&E::l_inv_pow(n, m))
    })
}

fn jet_expr(n: usize, order: usize) -> impl Strategy<Value = E> {
    sized_expr(n, order, 3, 3)
}

fn dim_and_expr(max_n: usize, order: usize) -> impl Strategy<Value = (usize, E)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), jet_expr(n, order)))
}

/// Sections `Σ c_{ab} p^a q^b (1+p²)^{-e} arctan(p)^t` that are in general
/// not symmetries.
fn section() -> impl Strategy<Value = ContactPolynomial> {
    let term = (-3i64..=3, 0u32..=2, 0u32..=2, 0i64..=1, 0u32..=1);
    prop::collection::vec(term, 1..=3).prop_map(|ts| {
        let poly = ts.iter().fold(QPoly::zero(), |acc, &(c, a, b, e, t)| {
            let coeff = ClosedForm::p()
                .pow(a)
                .mul(&ClosedForm::one_plus_p2_pow(-e))
                .mul(&ClosedForm::arctan().pow(t))
                .scale(&G::from_int(c));
            acc.add(&QPoly::monomial(coeff, b))
        });
        ContactPolynomial::new(poly)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn total_derivatives_commute((n, e) in dim_and_expr(3, 3)) {
        let sp = JetSpace::with_max_order(n, 6);
        for i in 0..n {
            for j in 0..i {
                let a = sp.total_derivative(&sp.total_derivative(&e, i).unwrap(), j).unwrap();
                let b = sp.total_derivative(&sp.total_derivative(&e, j).unwrap(), i).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn euler_annihilates_divergences((n, flux) in (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(sized_expr(n, 2, 2, 1), n)))) {
        let sp = JetSpace::with_max_order(n, 8);
        let div = sp.divergence(&flux).unwrap();
        prop_assert!(sp.euler_operator(&div).unwrap().is_zero());
    }

    #[test]
    fn noether_identity_on_random_pairs(
        (n, phi, density) in (2usize..=3).prop_flat_map(|n| (Just(n), jet_expr(n, 1), jet_expr(n, 2)))
    ) {
        let sp = JetSpace::with_max_order(n, 6);
        prop_assert!(sp.noether_identity_residual(&phi, &density).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_multiplicative(
        (n, a, b) in (1usize..=3).prop_flat_map(|n| (Just(n), jet_expr(n, 2), jet_expr(n, 2)))
    ) {
        let sp = JetSpace::with_max_order(n, 5);
        let eq = EquationObject::<BigRational>::minimal_surface(n);
        let ra = eq.reduce(&sp, &a).unwrap();
        let rb = eq.reduce(&sp, &b).unwrap();
        let again = eq.reduce_reduced(&sp, &ra).unwrap();
        prop_assert!(eq.reduced_eq(&again, &ra));
        let direct = eq.reduce(&sp, &a.mul(&b)).unwrap();
        let via = eq.reduce_reduced(&sp, &eq.reduced_mul(&ra, &rb)).unwrap();
        prop_assert!(eq.reduced_eq(&direct, &via));
        prop_assert!(eq.reduce(&sp, &a.mul(eq.f())).unwrap().is_zero());
    }

    #[test]
    fn symbolic_and_numeric_derivatives_agree((n, e) in dim_and_expr(3, 1), seed in any::<u64>()) {
        let sp = JetSpace::new(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..n {
            let d = sp.total_derivative(&e, i).unwrap();
            for _ in 0..100 {
                let pt = SamplePoint::random(&mut rng, n, 2, false);
                let sym = pt.eval(&d);
                let num = pt.total_derivative(&e, i).unwrap();
                prop_assert!((sym - num).abs() <= 1e-10 * (1.0 + num.abs()), "{} vs {}", sym, num);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn brackets_of_sections_vanish(a in section(), b in section()) {
        prop_assert!(jacobi_bracket(&a, &b).unwrap().is_zero());
    }
}

#[test]
fn brackets_with_generated_symmetries_vanish() {
    let sym = generate_symmetry(ChainSpec::new(Parity::Odd, 2, Branch::Re)).unwrap();
    let other = ContactPolynomial::new(QPoly::monomial(ClosedForm::p().scale_rational(&rat(1, 3)), 3));
    assert!(jacobi_bracket(&sym, &other).unwrap().is_zero());
}
