//! The tabulated initial symmetries and their relation to generated ones.

use num_rational::BigRational;

use crate::exprcore::{rat, ClosedForm, QPoly};

use super::chain::{generate_symmetry, terminal_homogeneous, Branch, ChainSpec, Parity};
use super::{ContactPolynomial, HierarchyError};

fn q_pow(c: ClosedForm, k: u32) -> QPoly {
    QPoly::monomial(c, k)
}

fn frac(num: &[i64], den_pow: u32) -> ClosedForm {
    let num: Vec<BigRational> = num.iter().map(|&c| rat(c, 1)).collect();
    ClosedForm::real_fraction(&num, den_pow)
}

/// `generated = scale·printed + c₀·h₀ + c₁·h₁` where `h₀, h₁` solve the
/// homogeneous terminal equation (see [`terminal_homogeneous`]).
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub spec: ChainSpec,
    pub printed: ContactPolynomial,
    pub scale: BigRational,
    pub constants: [BigRational; 2],
}

#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub name: &'static str,
    pub generated: ContactPolynomial,
    /// `generated − scale·printed − Σ c_j h_j`; zero on success.
    pub difference: ContactPolynomial,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.difference.is_zero()
    }
}

pub fn phi6() -> ContactPolynomial {
    ContactPolynomial::new(q_pow(frac(&[0, 1], 1), 2).add(&q_pow(ClosedForm::arctan(), 0)))
}

pub fn phi7() -> ContactPolynomial {
    ContactPolynomial::new(q_pow(frac(&[1], 1), 2).sub(&q_pow(ClosedForm::p().mul(&ClosedForm::arctan()), 0)))
}

pub fn phi8() -> ContactPolynomial {
    let lower = frac(&[0, 1], 1).scale_rational(&rat(3, 2));
    ContactPolynomial::new(q_pow(frac(&[0, 1], 2), 3).add(&q_pow(lower, 1)))
}

pub fn phi9() -> ContactPolynomial {
    ContactPolynomial::new(q_pow(frac(&[-1, 0, 1], 2), 3).sub(&q_pow(frac(&[3], 1), 1)))
}

pub fn fixtures() -> Vec<Fixture> {
    let zero = || [rat(0, 1), rat(0, 1)];
    vec![
        Fixture {
            name: "phi6",
            spec: ChainSpec::new(Parity::Even, 1, Branch::Re),
            printed: phi6(),
            scale: rat(1, 1),
            constants: zero(),
        },
        Fixture {
            name: "phi7",
            spec: ChainSpec::new(Parity::Even, 1, Branch::Im),
            printed: phi7(),
            scale: rat(-1, 1),
            constants: zero(),
        },
        Fixture {
            name: "phi8",
            spec: ChainSpec::new(Parity::Odd, 1, Branch::Im),
            printed: phi8(),
            scale: rat(2, 1),
            constants: [rat(0, 1), rat(3, 1)],
        },
        Fixture {
            name: "phi9",
            spec: ChainSpec::new(Parity::Odd, 1, Branch::Re),
            printed: phi9(),
            scale: rat(1, 1),
            constants: zero(),
        },
    ]
}

pub fn check_fixture(f: &Fixture) -> Result<FixtureCheck, HierarchyError> {
    let generated = generate_symmetry(f.spec)?;
    let h = terminal_homogeneous(f.spec.parity);
    let mut expected = f.printed.scale_rational(&f.scale);
    for (c, hj) in f.constants.iter().zip(h.iter()) {
        expected = expected.add(&hj.scale_rational(c));
    }
    Ok(FixtureCheck { name: f.name, difference: generated.sub(&expected), generated })
}

/// The lower-order symmetries printed alongside the chains, each paired
/// with the quadrature-constant solution it should coincide with.
pub fn quadrature_constant_symmetries() -> Vec<(&'static str, ContactPolynomial, ContactPolynomial)> {
    let [alpha, beta] = terminal_homogeneous(Parity::Even);
    let [gamma, delta] = terminal_homogeneous(Parity::Odd);
    vec![
        ("phi1", ContactPolynomial::new(QPoly::one()), beta),
        ("phi2_1", ContactPolynomial::new(QPoly::p()), alpha),
        ("phi2_2", ContactPolynomial::new(QPoly::q()), gamma),
        (
            "phi5",
            ContactPolynomial::new(QPoly::q().mul(&QPoly::from_closed_form(ClosedForm::arctan()))),
            delta,
        ),
    ]
}
