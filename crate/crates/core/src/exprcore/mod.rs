//! Exact univariate closed forms in `p = u_x`.
//!
//! Every coefficient produced by the symmetry chains is a Gaussian-rational
//! combination of `(p-i)^a (p+i)^b λ₋^c λ₊^d` with `λ∓ = log(p ∓ i)`.
//! Rational parts are stored in partial fractions at `±i`, so the
//! representation is canonical and zero-testing is structural.

mod closed_form;
mod gaussian;
mod qpoly;
mod ratfun;
mod realify;
pub mod serial;

pub use closed_form::{log_values, ClosedForm, LogExponents};
pub use gaussian::{binomial, fmt_rat, int, parse_rat, rat, rat_to_f64, GaussianRational};
pub use qpoly::QPoly;
pub use ratfun::{Pole, RationalFunctionPM};
pub use realify::{realify, RealDisplayForm, RealTerm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    /// The antiderivative needs a dilogarithm and leaves the class.
    #[error("antiderivative leaves the closed-form class at log monomial lm^{}*lp^{}", .log_exponents.0, .log_exponents.1)]
    ClosedFormEscape { log_exponents: LogExponents },
    #[error("expression is not invariant under conjugation")]
    NotReal,
}
