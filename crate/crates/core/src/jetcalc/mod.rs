//! Exact jet-space calculus for a fixed number of independent variables.
//!
//! Expressions are polynomials in `x^i`, `u_σ`, the potentials `s^i` and
//! `L = √(1 + Σ u_j²)`, divided by a power of `L`. The coefficient ring is
//! either the rationals or, for two independent variables, closed-form
//! functions of `u_x` with polynomial dependence on `u_y`.

mod equation;
mod jet;
mod poly;

pub use equation::{EquationObject, Reduced};
pub use jet::{coord_name, JetExpr, JetIndex, JetPoly, JetSpace, JetVar};
pub use poly::{JetCoeff, MPoly, Monomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("D_{direction} of the potential s^{potential} is not defined")]
    NonlocalUnderivable { potential: usize, direction: usize },
    #[error("jet order {order} exceeds the configured maximum {max}")]
    OrderOverflow { order: usize, max: usize },
}

/// Jacobi bracket of two sections depending on `u_x`, `u_y` only.
pub fn jacobi_bracket(
    a: &crate::hierarchy::ContactPolynomial,
    b: &crate::hierarchy::ContactPolynomial,
) -> Result<JetExpr<crate::exprcore::QPoly>, JetError> {
    JetSpace::new(2).jacobi_bracket(&a.to_jet(), &b.to_jet())
}
