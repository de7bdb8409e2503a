//! Exact structured serialization of closed forms.
//!
//! Numbers are fraction strings (`"-3/2"`), never floats. Gaussian
//! rationals are `[re, im]` pairs.

use serde::{Deserialize, Serialize};

use super::closed_form::ClosedForm;
use super::gaussian::{fmt_rat, parse_rat, GaussianRational};
use super::ratfun::{Pole, RationalFunctionPM};
use super::realify::{RealDisplayForm, RealTerm};

#[derive(Debug, thiserror::Error)]
#[error("malformed exact number: {0:?}")]
pub struct ParseNumberError(pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogTermDto {
    /// Power of `log(p - i)`.
    pub lm: u32,
    /// Power of `log(p + i)`.
    pub lp: u32,
    pub poly: Vec<[String; 2]>,
    /// Coefficients of `(p+i)^{-j}`, `j = 1, 2, …`.
    pub pole_minus_i: Vec<[String; 2]>,
    /// Coefficients of `(p-i)^{-j}`, `j = 1, 2, …`.
    pub pole_plus_i: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormDto {
    pub terms: Vec<LogTermDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealTermDto {
    pub numerator: Vec<String>,
    pub denominator_power: u32,
    pub arctan_power: u32,
    pub log_power: u32,
}

fn g_out(g: &GaussianRational) -> [String; 2] {
    [fmt_rat(&g.re), fmt_rat(&g.im)]
}

fn g_in(s: &[String; 2]) -> Result<GaussianRational, ParseNumberError> {
    let f = |x: &String| parse_rat(x).ok_or_else(|| ParseNumberError(x.clone()));
    Ok(GaussianRational::new(f(&s[0])?, f(&s[1])?))
}

impl From<&ClosedForm> for ClosedFormDto {
    fn from(e: &ClosedForm) -> Self {
        let terms = e
            .terms()
            .map(|(&(lm, lp), r)| LogTermDto {
                lm,
                lp,
                poly: r.poly_coeffs().iter().map(g_out).collect(),
                pole_minus_i: r.poles(Pole::MinusI).iter().map(g_out).collect(),
                pole_plus_i: r.poles(Pole::PlusI).iter().map(g_out).collect(),
            })
            .collect();
        Self { terms }
    }
}

impl TryFrom<&ClosedFormDto> for ClosedForm {
    type Error = ParseNumberError;

    fn try_from(dto: &ClosedFormDto) -> Result<Self, Self::Error> {
        let mut out = ClosedForm::zero();
        for t in &dto.terms {
            let mut r = RationalFunctionPM::from_poly(t.poly.iter().map(g_in).collect::<Result<_, _>>()?);
            for (list, pole) in [(&t.pole_minus_i, Pole::MinusI), (&t.pole_plus_i, Pole::PlusI)] {
                for (j, c) in list.iter().enumerate() {
                    r.add_assign(&RationalFunctionPM::pole(g_in(c)?, pole, j + 1));
                }
            }
            out = out.add(&ClosedForm::term((t.lm, t.lp), r));
        }
        Ok(out)
    }
}

impl From<&RealTerm> for RealTermDto {
    fn from(t: &RealTerm) -> Self {
        Self {
            numerator: t.numerator.iter().map(fmt_rat).collect(),
            denominator_power: t.den_pow,
            arctan_power: t.atan_pow,
            log_power: t.log_pow,
        }
    }
}

impl TryFrom<&RealTermDto> for RealTerm {
    type Error = ParseNumberError;

    fn try_from(d: &RealTermDto) -> Result<Self, Self::Error> {
        Ok(RealTerm {
            numerator: d
                .numerator
                .iter()
                .map(|s| parse_rat(s).ok_or_else(|| ParseNumberError(s.clone())))
                .collect::<Result<_, _>>()?,
            den_pow: d.denominator_power,
            atan_pow: d.arctan_power,
            log_pow: d.log_power,
        })
    }
}

pub fn real_form_to_dto(r: &RealDisplayForm) -> Vec<RealTermDto> {
    r.terms.iter().map(RealTermDto::from).collect()
}

pub fn real_form_from_dto(terms: &[RealTermDto]) -> Result<RealDisplayForm, ParseNumberError> {
    Ok(RealDisplayForm { terms: terms.iter().map(RealTerm::try_from).collect::<Result<_, _>>()? })
}
