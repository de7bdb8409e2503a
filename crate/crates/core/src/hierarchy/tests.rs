use super::*;
use crate::exprcore::{int, rat, GaussianRational as G};

fn frac(num: &[i64], den_pow: u32) -> ClosedForm {
    let num: Vec<BigRational> = num.iter().map(|&c| int(c)).collect();
    ClosedForm::real_fraction(&num, den_pow)
}

fn spec(parity: Parity, k: u32, branch: Branch) -> ChainSpec {
    ChainSpec::new(parity, k, branch)
}

#[test]
fn real_heads() {
    assert_eq!(homogeneous_basis(spec(Parity::Even, 1, Branch::Re)), frac(&[0, 1], 1));
    assert_eq!(homogeneous_basis(spec(Parity::Even, 1, Branch::Im)), frac(&[-1], 1));
    assert_eq!(homogeneous_basis(spec(Parity::Odd, 1, Branch::Re)), frac(&[-1, 0, 1], 2));
    assert_eq!(homogeneous_basis(spec(Parity::Odd, 1, Branch::Im)), frac(&[0, 2], 2));
    // (p+i)^4 = p^4 + 4ip^3 - 6p^2 - 4ip + 1
    assert_eq!(homogeneous_basis(spec(Parity::Odd, 2, Branch::Re)), frac(&[1, 0, -6, 0, 1], 4));
}

#[test]
fn homogeneous_residuals() {
    let f = ClosedForm::pole_monomial(G::one(), 0, -1);
    assert!(homogeneous_residual(&f, Parity::Even, 1).is_zero());
    let g = ClosedForm::pole_monomial(G::one(), -4, 0);
    assert!(homogeneous_residual(&g, Parity::Odd, 2).is_zero());
    assert_eq!(homogeneous_residual(&ClosedForm::one(), Parity::Even, 1), ClosedForm::from_int(2));
    assert_eq!(ode_coefficients(Parity::Odd, 2), (10, 20));
    assert!(!homogeneous_residual_alt_odd(&g, 2).is_zero());
    assert!(homogeneous_residual_alt_odd(&ClosedForm::pole_monomial(G::one(), -2, 0), 1).is_zero());
}

#[test]
fn all_bases_solve_their_equation() {
    for k in 1..=6 {
        for parity in [Parity::Even, Parity::Odd] {
            for branch in [Branch::Plus, Branch::Minus, Branch::Re, Branch::Im] {
                let f = homogeneous_basis(spec(parity, k, branch));
                assert!(homogeneous_residual(&f, parity, k).is_zero(), "{parity} {k} {branch}");
            }
        }
    }
}

#[test]
fn wronskians_by_direct_differentiation() {
    for parity in [Parity::Even, Parity::Odd] {
        for l in 1..=4 {
            let (y1, y2) = complex_pair(parity, l);
            let w = y1.mul(&y2.differentiate()).sub(&y1.differentiate().mul(&y2));
            assert_eq!(w, wronskian(parity, l));
        }
    }
    let (a, b) = (frac(&[0, 1], 1), frac(&[1], 1));
    let w = a.mul(&b.differentiate()).sub(&a.differentiate().mul(&b));
    assert_eq!(w, ClosedForm::one_plus_p2_pow(-2).neg());
}

#[test]
fn intermediate_level_satisfies_forced_equation() {
    let g2 = homogeneous_basis(spec(Parity::Odd, 2, Branch::Re));
    let g1 = solve_intermediate(Parity::Odd, 1, &g2).unwrap();
    let lhs = ode_operator_for_test(&g1, 6, 6);
    assert_eq!(lhs, g2.scale(&G::from_int(-20)));
    let f3 = homogeneous_basis(spec(Parity::Even, 3, Branch::Plus));
    let f2 = solve_intermediate(Parity::Even, 2, &f3).unwrap();
    assert_eq!(homogeneous_residual(&f2, Parity::Even, 2), f3.scale(&G::from_int(-30)));
}

fn ode_operator_for_test(f: &ClosedForm, c1: i64, c0: i64) -> ClosedForm {
    let d1 = f.differentiate();
    frac(&[1, 0, 1], 0)
        .mul(&d1.differentiate())
        .add(&ClosedForm::p().mul(&d1).scale(&G::from_int(c1)))
        .add(&f.scale(&G::from_int(c0)))
}

#[test]
fn terminal_quadratures() {
    assert_eq!(terminal_quadrature(Parity::Even, &frac(&[0, 1], 1)).unwrap(), ClosedForm::arctan());
    assert_eq!(
        terminal_quadrature(Parity::Even, &frac(&[1], 1)).unwrap(),
        ClosedForm::p().mul(&ClosedForm::arctan()).neg()
    );
    assert_eq!(terminal_quadrature(Parity::Odd, &frac(&[-1, 0, 1], 2)).unwrap(), frac(&[-3], 1));
}

#[test]
fn terminal_homogeneous_solutions() {
    for parity in [Parity::Even, Parity::Odd] {
        for h in terminal_homogeneous(parity) {
            assert!(determining_residual(&h).is_zero());
        }
    }
}

#[test]
fn example_fixtures_reproduce() {
    for f in fixtures() {
        let c = check_fixture(&f).unwrap();
        assert!(c.passed(), "{}: {:?}", f.name, c.difference);
    }
}

#[test]
fn printed_lower_symmetries_are_quadrature_constants() {
    for (name, printed, from_constants) in quadrature_constant_symmetries() {
        assert_eq!(printed, from_constants, "{name}");
        assert!(determining_residual(&printed).is_zero());
    }
}

#[test]
fn determining_equation_controls() {
    let one = ContactPolynomial::new(QPoly::one());
    assert!(determining_residual(&one).is_zero());
    let p2 = ContactPolynomial::new(QPoly::p().mul(&QPoly::p()));
    assert_eq!(
        determining_residual(&p2),
        ContactPolynomial::new(QPoly::from_closed_form(frac(&[2, 0, 2], 0)))
    );
}

#[test]
fn generated_symmetries_low_levels() {
    for k in 1..=3 {
        for parity in [Parity::Even, Parity::Odd] {
            for branch in [Branch::Re, Branch::Im, Branch::Plus, Branch::Minus] {
                let s = spec(parity, k, branch);
                let phi = generate_symmetry(s).unwrap();
                assert!(determining_residual(&phi).is_zero(), "{s}");
                assert_eq!(phi.parity(), Some(parity));
                assert_eq!(phi.degree(), Some(s.degree()));
                assert_eq!(phi.coefficient(s.degree()), homogeneous_basis(s));
            }
        }
    }
}

#[test]
fn nabla_on_complex_heads() {
    let h = ClosedForm::pole_monomial(G::one(), 0, -1);
    assert_eq!(
        recursion_nabla(&h, Parity::Even, Branch::Plus).unwrap(),
        ClosedForm::pole_monomial(G::one(), 0, -3)
    );
    let h = ClosedForm::pole_monomial(G::one(), 0, -2);
    assert_eq!(
        recursion_nabla(&h, Parity::Odd, Branch::Minus).unwrap(),
        ClosedForm::pole_monomial(G::one(), 0, -4)
    );
    for parity in [Parity::Even, Parity::Odd] {
        for branch in [Branch::Plus, Branch::Minus, Branch::Re, Branch::Im] {
            let mut h = homogeneous_basis(spec(parity, 1, branch));
            for _ in 0..5 {
                h = recursion_nabla(&h, parity, branch).unwrap();
            }
            assert_eq!(h, homogeneous_basis(spec(parity, 6, branch)));
        }
    }
    assert_eq!(
        recursion_nabla(&ClosedForm::p(), Parity::Even, Branch::Re),
        Err(HierarchyError::NotAHead)
    );
}

#[test]
fn delta_swaps() {
    let s = spec(Parity::Even, 1, Branch::Re);
    assert_eq!(recursion_delta(s).branch, Branch::Im);
    assert_eq!(recursion_delta(recursion_delta(s)), s);
    let generated = generate_symmetry(recursion_delta(s)).unwrap();
    assert_eq!(generated, phi7().scale_rational(&rat(-1, 1)));
}

#[test]
fn audit_findings() {
    let rows = paper_basis_audit(6);
    for r in &rows {
        if r.family == BasisFamily::F1 {
            assert!(r.exact_match());
        }
        if !r.proportional() {
            assert!(!r.printed_residual.is_zero());
        }
    }
    let f2 = |k| rows.iter().find(|r| r.family == BasisFamily::F2 && r.k == k).unwrap();
    assert_eq!(f2(1).scalar, Some(G::from_int(-1)));
    assert_eq!(f2(2).printed, frac(&[1, 0, 3], 3));
    assert!(!f2(2).proportional());
    let g1 = rows.iter().find(|r| r.family == BasisFamily::G1 && r.k == 1).unwrap();
    assert_eq!(g1.printed, frac(&[0, 0, 1], 2));
    assert!(!g1.proportional());
    let g2 = rows.iter().find(|r| r.family == BasisFamily::G2 && r.k == 1).unwrap();
    assert!(g2.exact_match());
    assert!(g2.alt_coefficient_residual.as_ref().unwrap().is_zero());
}
