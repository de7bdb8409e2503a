//! Forward-mode automatic differentiation used as an independent oracle.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::exprcore::{rat_to_f64, ClosedForm, GaussianRational, Pole, QPoly};

/// Value with first and second partials in two variables `(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub v: Complex64,
    pub dp: Complex64,
    pub dq: Complex64,
    pub dpp: Complex64,
    pub dpq: Complex64,
    pub dqq: Complex64,
}

const Z: Complex64 = Complex64::new(0.0, 0.0);

impl Jet2 {
    pub fn constant(v: Complex64) -> Self {
        Self { v, dp: Z, dq: Z, dpp: Z, dpq: Z, dqq: Z }
    }

    pub fn real(v: f64) -> Self {
        Self::constant(Complex64::new(v, 0.0))
    }

    pub fn var_p(p: f64) -> Self {
        Self { dp: Complex64::new(1.0, 0.0), ..Self::real(p) }
    }

    pub fn var_q(q: f64) -> Self {
        Self { dq: Complex64::new(1.0, 0.0), ..Self::real(q) }
    }

    /// `g ∘ self` given `g, g', g''` at the value.
    fn chain(self, g: Complex64, g1: Complex64, g2: Complex64) -> Self {
        Self {
            v: g,
            dp: g1 * self.dp,
            dq: g1 * self.dq,
            dpp: g2 * self.dp * self.dp + g1 * self.dpp,
            dpq: g2 * self.dp * self.dq + g1 * self.dpq,
            dqq: g2 * self.dq * self.dq + g1 * self.dqq,
        }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(self.v.ln(), r, -r * r)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }

    pub fn powi(self, e: i32) -> Self {
        if e == 0 {
            return Self::real(1.0);
        }
        let v = self.v;
        let ef = e as f64;
        self.chain(v.powi(e), ef * v.powi(e - 1), ef * (ef - 1.0) * v.powi(e - 2))
    }

    pub fn scale(self, c: Complex64) -> Self {
        Self {
            v: self.v * c,
            dp: self.dp * c,
            dq: self.dq * c,
            dpp: self.dpp * c,
            dpq: self.dpq * c,
            dqq: self.dqq * c,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v + o.v,
            dp: self.dp + o.dp,
            dq: self.dq + o.dq,
            dpp: self.dpp + o.dpp,
            dpq: self.dpq + o.dpq,
            dqq: self.dqq + o.dqq,
        }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            dp: self.dp * o.v + self.v * o.dp,
            dq: self.dq * o.v + self.v * o.dq,
            dpp: self.dpp * o.v + 2.0 * self.dp * o.dp + self.v * o.dpp,
            dpq: self.dpq * o.v + self.dp * o.dq + self.dq * o.dp + self.v * o.dpq,
            dqq: self.dqq * o.v + 2.0 * self.dq * o.dq + self.v * o.dqq,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

fn gc(g: &GaussianRational) -> Complex64 {
    Complex64::new(rat_to_f64(&g.re), rat_to_f64(&g.im))
}

/// A closed form in `p` evaluated on a jet of `p`, with
/// `log(p ∓ i) ± iπ/2` so that values are continuous along the real line.
pub fn closed_form_jet(e: &ClosedForm, p: Jet2) -> Jet2 {
    let i = Complex64::new(0.0, 1.0);
    let half_pi = Jet2::constant(i * std::f64::consts::FRAC_PI_2);
    let lm = (p - Jet2::constant(i)).ln() + half_pi;
    let lp = (p + Jet2::constant(i)).ln() - half_pi;
    let mut acc = Jet2::real(0.0);
    for (&(c, d), r) in e.terms() {
        let mut t = Jet2::real(0.0);
        let mut pw = Jet2::real(1.0);
        for coef in r.poly_coeffs() {
            t = t + pw.scale(gc(coef));
            pw = pw * p;
        }
        for (pole, loc) in [(Pole::PlusI, i), (Pole::MinusI, -i)] {
            let inv = (p - Jet2::constant(loc)).recip();
            let mut pw = inv;
            for coef in r.poles(pole) {
                t = t + pw.scale(gc(coef));
                pw = pw * inv;
            }
        }
        acc = acc + t * lm.powi(c as i32) * lp.powi(d as i32);
    }
    acc
}

/// `Σ_k c_k(p) q^k` on jets of `p` and `q`.
pub fn qpoly_jet(f: &QPoly, p: Jet2, q: Jet2) -> Jet2 {
    f.coeffs()
        .iter()
        .fold(Jet2::real(0.0), |acc, (k, c)| acc + closed_form_jet(c, p) * q.powi(*k as i32))
}

/// Real dual number carrying one directional derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Self {
        Self { v, d }
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        Self { v: s, d: self.d / (2.0 * s) }
    }

    pub fn powi(self, e: i32) -> Self {
        if e == 0 {
            return Self::new(1.0, 0.0);
        }
        Self { v: self.v.powi(e), d: e as f64 * self.v.powi(e - 1) * self.d }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.v + o.v, self.d + o.d)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual::new(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))
    }
}
