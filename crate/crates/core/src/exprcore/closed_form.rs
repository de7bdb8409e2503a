//! Closed forms `Σ R_{c,d}(p) λ₋^c λ₊^d` with `λ∓ = log(p ∓ i)` and
//! `R_{c,d}` in [`RationalFunctionPM`].

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use super::gaussian::{int, GaussianRational as G};
use super::ratfun::{Pole, RationalFunctionPM};
use super::ExprError;

/// Exponents `(c, d)` of `λ₋^c λ₊^d`.
pub type LogExponents = (u32, u32);

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ClosedForm {
    terms: BTreeMap<LogExponents, RationalFunctionPM>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational_function(RationalFunctionPM::one())
    }

    pub fn constant(c: G) -> Self {
        Self::from_rational_function(RationalFunctionPM::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(G::from_int(n))
    }

    /// The coordinate `p`.
    pub fn p() -> Self {
        Self::from_rational_function(RationalFunctionPM::monomial(G::one(), 1))
    }

    /// `λ₋ = log(p - i)`.
    pub fn log_minus() -> Self {
        Self::term((1, 0), RationalFunctionPM::one())
    }

    /// `λ₊ = log(p + i)`.
    pub fn log_plus() -> Self {
        Self::term((0, 1), RationalFunctionPM::one())
    }

    /// `arctan p = (λ₋ - λ₊) / (2i)`.
    pub fn arctan() -> Self {
        let k = G::i().scale(&int(2)).inv().expect("2i is invertible");
        Self::log_minus().sub(&Self::log_plus()).scale(&k)
    }

    /// `log(1 + p²) = λ₋ + λ₊`.
    pub fn log_one_plus_p2() -> Self {
        Self::log_minus().add(&Self::log_plus())
    }

    /// `c (p-i)^a (p+i)^b`.
    pub fn pole_monomial(c: G, a: i64, b: i64) -> Self {
        Self::from_rational_function(RationalFunctionPM::pole_monomial(c, a, b))
    }

    /// `(1 + p²)^e` for any integer `e`.
    pub fn one_plus_p2_pow(e: i64) -> Self {
        Self::pole_monomial(G::one(), e, e)
    }

    /// `N(p) / (1+p²)^m` from real numerator coefficients in increasing degree.
    pub fn real_fraction(num: &[BigRational], den_pow: u32) -> Self {
        let n = RationalFunctionPM::from_poly(num.iter().cloned().map(G::real).collect());
        Self::from_rational_function(n).mul(&Self::one_plus_p2_pow(-(den_pow as i64)))
    }

    pub fn from_rational_function(r: RationalFunctionPM) -> Self {
        Self::term((0, 0), r)
    }

    pub fn term(exp: LogExponents, r: RationalFunctionPM) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(exp, r);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LogExponents, &RationalFunctionPM)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: LogExponents) -> RationalFunctionPM {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Largest total degree `c + d` in the log generators (`None` for zero).
    pub fn log_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(c, d)| c + d).max()
    }

    /// Rational-function view when no logs are present.
    pub fn as_rational_function(&self) -> Option<RationalFunctionPM> {
        match self.terms.len() {
            0 => Some(RationalFunctionPM::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, exp: LogExponents, r: &RationalFunctionPM) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        entry.add_assign(r);
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, r) in &o.terms {
            out.accumulate(*e, r);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&G::from_int(-1))
    }

    pub fn scale(&self, c: &G) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, r)| (*e, r.scale(c))).collect() }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&G::real(r.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for ((c1, d1), r1) in &self.terms {
            for ((c2, d2), r2) in &o.terms {
                out.accumulate((c1 + c2, d1 + d2), &r1.mul(r2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Conjugation: `i ↦ -i` on coefficients together with `λ₋ ↔ λ₊`.
    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|((c, d), r)| ((*d, *c), r.conj())).collect() }
    }

    /// True when the expression is real on the real line.
    pub fn is_conjugation_symmetric(&self) -> bool {
        *self == self.conj()
    }

    /// `d/dp`, with `λ₋' = (p-i)^{-1}` and `λ₊' = (p+i)^{-1}`.
    pub fn differentiate(&self) -> Self {
        let mut out = Self::zero();
        for (&(c, d), r) in &self.terms {
            out.accumulate((c, d), &r.differentiate());
            if c > 0 {
                let f = RationalFunctionPM::pole(G::from_int(c as i64), Pole::PlusI, 1);
                out.accumulate((c - 1, d), &r.mul(&f));
            }
            if d > 0 {
                let f = RationalFunctionPM::pole(G::from_int(d as i64), Pole::MinusI, 1);
                out.accumulate((c, d - 1), &r.mul(&f));
            }
        }
        out
    }

    /// Antiderivative in the class, with zero constant of integration.
    ///
    /// Works top-down in total log degree. At degree `m`, the coefficient
    /// `S_{c,d}` of the antiderivative must satisfy
    /// `S'_{c,d} = R_{c,d} - (c+1) S_{c+1,d}/(p-i) - (d+1) S_{c,d+1}/(p+i)`,
    /// and the right side must be free of simple poles. Those residue
    /// conditions fix the constants left open one degree up; two
    /// conditions that disagree mean the integral needs a dilogarithm.
    pub fn antiderivative(&self) -> Result<Self, ExprError> {
        let Some(top) = self.log_degree() else {
            return Ok(Self::zero());
        };
        // Rational part of S at the degree above the current one (constants
        // pending) and the constants already pinned down.
        let mut upper: BTreeMap<LogExponents, RationalFunctionPM> = BTreeMap::new();
        let mut result = Self::zero();
        for m in (0..=top).rev() {
            let mut pinned: BTreeMap<LogExponents, G> = BTreeMap::new();
            let mut current: BTreeMap<LogExponents, RationalFunctionPM> = BTreeMap::new();
            for c in 0..=m {
                let d = m - c;
                let mut known = self.coefficient((c, d));
                if let Some(t) = upper.get(&(c + 1, d)) {
                    let f = RationalFunctionPM::pole(G::from_int(-((c + 1) as i64)), Pole::PlusI, 1);
                    known.add_assign(&t.mul(&f));
                }
                if let Some(t) = upper.get(&(c, d + 1)) {
                    let f = RationalFunctionPM::pole(G::from_int(-((d + 1) as i64)), Pole::MinusI, 1);
                    known.add_assign(&t.mul(&f));
                }
                let (t, res_plus, res_minus) = known.integrate_rational_part();
                // residue(known) - (c+1) κ_{c+1,d} = 0, likewise at -i
                for (exp, val) in [
                    ((c + 1, d), res_plus.scale(&BigRational::new(1.into(), (c + 1).into()))),
                    ((c, d + 1), res_minus.scale(&BigRational::new(1.into(), (d + 1).into()))),
                ] {
                    match pinned.get(&exp) {
                        Some(prev) if *prev != val => {
                            return Err(ExprError::ClosedFormEscape { log_exponents: exp });
                        }
                        Some(_) => {}
                        None => {
                            pinned.insert(exp, val);
                        }
                    }
                }
                if !t.is_zero() {
                    current.insert((c, d), t);
                }
            }
            for (exp, k) in pinned {
                result.accumulate(exp, &RationalFunctionPM::constant(k));
            }
            for (exp, t) in std::mem::replace(&mut upper, current) {
                result.accumulate(exp, &t);
            }
        }
        for (exp, t) in upper {
            result.accumulate(exp, &t);
        }
        Ok(result)
    }

    /// Evaluates at real or complex `p`, taking `λ₋ = ½log(1+p²) + i·arctan p`
    /// and `λ₊` its conjugate on the real line (analytically continued).
    pub fn eval(&self, p: Complex64) -> Complex64 {
        let (lm, lp) = log_values(p);
        self.terms
            .iter()
            .map(|(&(c, d), r)| r.eval(p) * lm.powu(c) * lp.powu(d))
            .sum()
    }
}

/// `(λ₋, λ₊)` at `p` on the branch continuous along the real axis, where
/// `λ₋ = ½Λ + iA` and `λ₊ = ½Λ - iA`.
pub fn log_values(p: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::new(0.0, 1.0);
    let half_pi = Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
    ((p - i).ln() + half_pi, (p + i).ln() - half_pi)
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(c, d), r)| match (c, d) {
                (0, 0) => format!("[{r}]"),
                _ => format!("[{r}]*lm^{c}*lp^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
