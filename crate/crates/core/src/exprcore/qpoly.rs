//! Polynomials in `q = u_y` with [`ClosedForm`] coefficients in `p = u_x`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use super::closed_form::ClosedForm;
use super::gaussian::GaussianRational as G;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: BTreeMap<u32, ClosedForm>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_closed_form(ClosedForm::one())
    }

    pub fn q() -> Self {
        Self::monomial(ClosedForm::one(), 1)
    }

    pub fn p() -> Self {
        Self::from_closed_form(ClosedForm::p())
    }

    pub fn constant(c: G) -> Self {
        Self::from_closed_form(ClosedForm::constant(c))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::constant(G::real(r))
    }

    pub fn from_closed_form(c: ClosedForm) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · q^k`.
    pub fn monomial(c: ClosedForm, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, ClosedForm> {
        &self.coeffs
    }

    pub fn coefficient(&self, k: u32) -> ClosedForm {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn accumulate(&mut self, k: u32, c: &ClosedForm) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            out.accumulate(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &ClosedForm) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.accumulate(*k, &v.mul(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &o.coeffs {
                out.accumulate(k1 + k2, &c1.mul(c2));
            }
        }
        out
    }

    /// `∂/∂p`.
    pub fn d_dp(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.coeffs {
            out.accumulate(*k, &c.differentiate());
        }
        out
    }

    /// `∂/∂q`.
    pub fn d_dq(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.coeffs {
            if *k > 0 {
                out.accumulate(k - 1, &c.scale(&G::from_int(*k as i64)));
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }

    /// Exact quotient `self / d` when the leading coefficient of `d` in `q`
    /// is a unit `c (p-i)^a (p+i)^b` and the division leaves no remainder.
    pub fn try_div(&self, d: &Self) -> Option<Self> {
        let dk = d.degree()?;
        let lead = d.coefficient(dk).as_rational_function()?;
        let (g, a, b) = lead.as_root_monomial()?;
        let inv = ClosedForm::pole_monomial(g.inv()?, -(a as i64), -(b as i64));
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rk) = rem.degree() {
            if rk < dk {
                return None;
            }
            let t = Self::monomial(rem.coefficient(rk).mul(&inv), rk - dk);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    pub fn eval(&self, p: Complex64, q: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(k, c)| c.eval(p) * q.powu(*k)).sum()
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("({c})*q^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
