//! Contact symmetries polynomial in `u_y`, generated level by level from
//! the chains of linear ODEs for their coefficients, and the recursion
//! operators acting on the chain heads.

mod audit;
mod chain;
mod fixtures;
mod recursion;

pub use audit::{paper_basis_audit, printed_basis, proportionality, AuditRow, BasisFamily};
pub use chain::{
    complex_pair, coupling, generate_ladder, generate_symmetry, homogeneous_basis, homogeneous_residual,
    homogeneous_residual_alt_odd, ode_coefficients, solve_intermediate, terminal_homogeneous,
    terminal_quadrature, terminal_residual, wronskian, Branch, ChainSpec, Parity,
};
pub use fixtures::{check_fixture, fixtures, phi6, phi7, phi8, phi9, quadrature_constant_symmetries, Fixture, FixtureCheck};
pub use recursion::{recursion_delta, recursion_nabla};

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::exprcore::{ClosedForm, ExprError, GaussianRational as G, LogExponents, QPoly};
use crate::jetcalc::JetExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("closed-form escape at level {level}: log monomial ({}, {})", .log_exponents.0, .log_exponents.1)]
    ClosedFormEscape { level: u32, log_exponents: LogExponents },
    #[error("not a homogeneous chain head")]
    NotAHead,
}

impl HierarchyError {
    pub(crate) fn from_expr(e: ExprError, level: u32) -> Self {
        match e {
            ExprError::ClosedFormEscape { log_exponents } => HierarchyError::ClosedFormEscape { level, log_exponents },
            ExprError::NotReal => unreachable!("integration never tests reality"),
        }
    }
}

/// `φ(u_x, u_y) = Σ_j c_j(u_x) u_y^j`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ContactPolynomial {
    poly: QPoly,
}

impl ContactPolynomial {
    pub fn new(poly: QPoly) -> Self {
        Self { poly }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn coefficient(&self, j: u32) -> ClosedForm {
        self.poly.coefficient(j)
    }

    /// Present powers of `u_y` with their coefficients.
    pub fn coefficients(&self) -> impl Iterator<Item = (u32, &ClosedForm)> {
        self.poly.coeffs().iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }

    /// `None` when both even and odd powers of `u_y` occur.
    pub fn parity(&self) -> Option<Parity> {
        let mut even = false;
        let mut odd = false;
        for k in self.poly.coeffs().keys() {
            if k % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (true, false) | (false, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            (true, true) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.poly.add(&o.poly))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.poly.sub(&o.poly))
    }

    pub fn scale(&self, c: &G) -> Self {
        Self::new(self.poly.scale(&ClosedForm::constant(c.clone())))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&G::real(r.clone()))
    }

    /// As a jet expression over closed-form coefficients in two variables.
    pub fn to_jet(&self) -> JetExpr<QPoly> {
        JetExpr::constant(2, self.poly.clone())
    }

    pub fn eval(&self, p: f64, q: f64) -> num_complex::Complex64 {
        self.poly.eval(num_complex::Complex64::new(p, 0.0), num_complex::Complex64::new(q, 0.0))
    }
}

impl fmt::Debug for ContactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// `(1+u_x²)φ_{xx} + 2u_xu_yφ_{xy} + (1+u_y²)φ_{yy}`, derivatives taken in
/// `u_x` and `u_y`.
pub fn determining_residual(phi: &ContactPolynomial) -> ContactPolynomial {
    let f = phi.poly();
    let fp = f.d_dp();
    let fpp = fp.d_dp();
    let fpq = fp.d_dq();
    let fqq = f.d_dq().d_dq();
    let one_p2 = QPoly::from_closed_form(ClosedForm::one_plus_p2_pow(1));
    let one_q2 = QPoly::one().add(&QPoly::q().mul(&QPoly::q()));
    let two_pq = QPoly::p().mul(&QPoly::q()).scale(&ClosedForm::from_int(2));
    ContactPolynomial::new(one_p2.mul(&fpp).add(&two_pq.mul(&fpq)).add(&one_q2.mul(&fqq)))
}

#[cfg(test)]
mod tests;
