//! Real display basis: rational functions over powers of `1+p²` times
//! powers of `A = arctan p` and `Λ = log(1+p²)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::closed_form::ClosedForm;
use super::gaussian::{binomial, fmt_rat, rat, rat_to_f64, GaussianRational as G};
use super::ratfun::RationalFunctionPM;
use super::ExprError;

/// `N(p) / (1+p²)^m · A^a · Λ^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTerm {
    /// Numerator coefficients in increasing degree of `p`.
    pub numerator: Vec<BigRational>,
    pub den_pow: u32,
    pub atan_pow: u32,
    pub log_pow: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RealDisplayForm {
    pub terms: Vec<RealTerm>,
}

impl RealTerm {
    pub fn eval(&self, p: f64) -> f64 {
        let num: f64 = self.numerator.iter().rev().fold(0.0, |acc, c| acc * p + rat_to_f64(c));
        num / (1.0 + p * p).powi(self.den_pow as i32)
            * p.atan().powi(self.atan_pow as i32)
            * (1.0 + p * p).ln().powi(self.log_pow as i32)
    }

    pub fn to_closed_form(&self) -> ClosedForm {
        ClosedForm::real_fraction(&self.numerator, self.den_pow)
            .mul(&ClosedForm::arctan().pow(self.atan_pow))
            .mul(&ClosedForm::log_one_plus_p2().pow(self.log_pow))
    }
}

impl RealDisplayForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, p: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(p)).sum()
    }

    pub fn to_closed_form(&self) -> ClosedForm {
        self.terms.iter().fold(ClosedForm::zero(), |acc, t| acc.add(&t.to_closed_form()))
    }

    /// Plain-text rendering in `u_x` notation, readable back by the CLI
    /// parser. Each term is `±c*(N)/(1+u_x^2)^m*arctan(u_x)^a*log(1+u_x^2)^b`.
    pub fn to_text(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, t) in self.terms.iter().enumerate() {
            let (neg, body) = term_text(t, var);
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// Polynomial text with the overall sign pulled out when it has one term.
pub(crate) fn poly_text(num: &[BigRational], var: &str) -> (bool, String, usize) {
    let nonzero: Vec<(usize, &BigRational)> =
        num.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut s = String::new();
    let single_negative = nonzero.len() == 1 && nonzero[0].1.is_negative();
    for (pos, (deg, c)) in nonzero.iter().rev().enumerate() {
        let c = if single_negative { -(*c).clone() } else { (*c).clone() };
        let mag = c.abs();
        if pos > 0 {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            s.push('-');
        }
        let pw = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        if pw.is_empty() {
            s.push_str(&fmt_rat(&mag));
        } else if mag.is_one() {
            s.push_str(&pw);
        } else {
            s.push_str(&format!("{}*{pw}", fmt_rat(&mag)));
        }
    }
    (single_negative, s, nonzero.len())
}

fn term_text(t: &RealTerm, var: &str) -> (bool, String) {
    let (neg, num, count) = poly_text(&t.numerator, var);
    let mut factors = Vec::new();
    let has_other = t.den_pow > 0 || t.atan_pow > 0 || t.log_pow > 0;
    if count > 1 && has_other {
        factors.push(format!("({num})"));
    } else if !(num == "1" && has_other) {
        factors.push(num);
    }
    let mut s = factors.join("*");
    if t.den_pow > 0 {
        if s.is_empty() {
            s.push('1');
        }
        s.push_str(&format!("/(1+{var}^2)"));
        if t.den_pow > 1 {
            s.push_str(&format!("^{}", t.den_pow));
        }
    }
    for (pw, name) in [(t.atan_pow, format!("arctan({var})")), (t.log_pow, format!("log(1+{var}^2)"))] {
        if pw == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&name);
        if pw > 1 {
            s.push_str(&format!("^{pw}"));
        }
    }
    (neg, s)
}

/// Rewrites a conjugation-symmetric closed form in the real display basis.
pub fn realify(e: &ClosedForm) -> Result<RealDisplayForm, ExprError> {
    if !e.is_conjugation_symmetric() {
        return Err(ExprError::NotReal);
    }
    // λ₋ = ½Λ + iA, λ₊ = ½Λ - iA
    let mut grouped: BTreeMap<(u32, u32), RationalFunctionPM> = BTreeMap::new();
    for (&(c, d), r) in e.terms() {
        for a1 in 0..=c {
            for a2 in 0..=d {
                let atan = a1 + a2;
                let log = c + d - atan;
                let b = BigRational::from_integer(binomial(c as u64, a1 as u64) * binomial(d as u64, a2 as u64));
                let k = G::real(b * rat(1, 2).pow(log as i32)) * G::i().pow(a1 as i64) * (-G::i()).pow(a2 as i64);
                grouped.entry((atan, log)).or_default().add_assign(&r.scale(&k));
            }
        }
    }
    let mut terms = Vec::new();
    for ((atan_pow, log_pow), r) in grouped {
        if r.is_zero() {
            continue;
        }
        let (num, den_pow) = r.over_one_plus_p2();
        if num.iter().any(|c| !c.is_real()) {
            return Err(ExprError::NotReal);
        }
        terms.push(RealTerm {
            numerator: num.into_iter().map(|c| c.re).collect(),
            den_pow: den_pow as u32,
            atan_pow,
            log_pow,
        });
    }
    Ok(RealDisplayForm { terms })
}

#[cfg(test)]
mod tests {
    use super::super::gaussian::int;
    use super::*;

    #[test]
    fn sum_of_simple_poles() {
        let e = ClosedForm::pole_monomial(G::one(), 0, -1).add(&ClosedForm::pole_monomial(G::one(), -1, 0));
        let r = realify(&e).unwrap();
        assert_eq!(
            r.terms,
            vec![RealTerm { numerator: vec![int(0), int(2)], den_pow: 1, atan_pow: 0, log_pow: 0 }]
        );
    }

    #[test]
    fn log_sum_is_capital_lambda() {
        let r = realify(&ClosedForm::log_one_plus_p2()).unwrap();
        assert_eq!(r.terms, vec![RealTerm { numerator: vec![int(1)], den_pow: 0, atan_pow: 0, log_pow: 1 }]);
        let r = realify(&ClosedForm::arctan()).unwrap();
        assert_eq!(r.terms, vec![RealTerm { numerator: vec![int(1)], den_pow: 0, atan_pow: 1, log_pow: 0 }]);
    }

    #[test]
    fn single_pole_is_not_real() {
        assert_eq!(realify(&ClosedForm::pole_monomial(G::one(), -1, 0)), Err(ExprError::NotReal));
    }

    #[test]
    fn text_rendering() {
        let e = ClosedForm::p()
            .mul(&ClosedForm::one_plus_p2_pow(-1))
            .sub(&ClosedForm::p().mul(&ClosedForm::arctan()).scale_rational(&rat(3, 2)));
        let r = realify(&e).unwrap();
        assert_eq!(r.to_text("u_x"), "u_x/(1+u_x^2) - 3/2*u_x*arctan(u_x)");
        assert_eq!(r.to_closed_form(), e);
    }
}
