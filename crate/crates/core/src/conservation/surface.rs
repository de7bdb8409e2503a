//! Surfaces invariant under a contact symmetry are planes.
//!
//! On a branch `u_y = φ(u_x)` the equation collapses to `C(u_x)·u_xx = 0`
//! with `C = (1+p²)φ'² − 2pφφ' + 1 + φ²`. As a quadratic in `φ'` its
//! discriminant is `−4(1+p²+φ²) < 0`, so `C > 0`.

use num_rational::BigRational;

use crate::exprcore::{int, ClosedForm, GaussianRational as G};
use crate::jetcalc::MPoly;

/// `4a²b² − 4(1+a²)(1+b²) = −4(1+a²+b²)` in `ℚ[a, b]`.
pub fn discriminant_identity_holds() -> bool {
    type P = MPoly<u8, BigRational>;
    let a = P::var(0);
    let b = P::var(1);
    let one = P::one();
    let four = |p: &P| p.scale(&int(4));
    let a2 = a.mul(&a);
    let b2 = b.mul(&b);
    let lhs = four(&a2.mul(&b2)).sub(&four(&one.add(&a2).mul(&one.add(&b2))));
    let rhs = four(&one.add(&a2).add(&b2)).neg();
    lhs.sub(&rhs).is_zero()
}

#[derive(Clone, Debug)]
pub struct InvariantSurfaceReport {
    /// `C(p) = (1+p²)φ'² − 2pφφ' + 1 + φ²`.
    pub coefficient: ClosedForm,
    /// `C − [(1+p²)(φ' − pφ/(1+p²))² + (1+p²+φ²)/(1+p²)]`, zero when the
    /// sum-of-squares certificate holds exactly.
    pub certificate_residual: ClosedForm,
    pub discriminant_identity: bool,
}

impl InvariantSurfaceReport {
    pub fn certifies_plane(&self) -> bool {
        self.certificate_residual.is_zero() && self.discriminant_identity
    }
}

pub fn invariant_surface_check(phi: &ClosedForm) -> InvariantSurfaceReport {
    let p = ClosedForm::p();
    let w = ClosedForm::one_plus_p2_pow(1);
    let w_inv = ClosedForm::one_plus_p2_pow(-1);
    let dphi = phi.differentiate();
    let two = G::from_int(2);
    let coefficient = w
        .mul(&dphi.mul(&dphi))
        .sub(&p.mul(phi).mul(&dphi).scale(&two))
        .add(&ClosedForm::one())
        .add(&phi.mul(phi));
    let shifted = dphi.sub(&p.mul(phi).mul(&w_inv));
    let sos = w.mul(&shifted.mul(&shifted)).add(&w.add(&phi.mul(phi)).mul(&w_inv));
    InvariantSurfaceReport {
        certificate_residual: coefficient.sub(&sos),
        coefficient,
        discriminant_identity: discriminant_identity_holds(),
    }
}
