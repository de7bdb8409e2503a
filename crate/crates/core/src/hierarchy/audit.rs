//! Comparison of the printed real bases against the verified complex ones.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exprcore::{binomial, ClosedForm, GaussianRational as G, Pole};

use super::chain::{homogeneous_residual, homogeneous_residual_alt_odd, level_basis, Branch, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisFamily {
    /// Even chains, first member (real part).
    F1,
    /// Even chains, second member (imaginary part).
    F2,
    G1,
    G2,
}

impl BasisFamily {
    pub const ALL: [BasisFamily; 4] = [BasisFamily::F1, BasisFamily::F2, BasisFamily::G1, BasisFamily::G2];

    pub fn parity(self) -> Parity {
        match self {
            BasisFamily::F1 | BasisFamily::F2 => Parity::Even,
            BasisFamily::G1 | BasisFamily::G2 => Parity::Odd,
        }
    }

    pub fn branch(self) -> Branch {
        match self {
            BasisFamily::F1 | BasisFamily::G1 => Branch::Re,
            BasisFamily::F2 | BasisFamily::G2 => Branch::Im,
        }
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisFamily::F1 => "f1",
            BasisFamily::F2 => "f2",
            BasisFamily::G1 => "g1",
            BasisFamily::G2 => "g2",
        })
    }
}

fn signed(c: BigInt, negative: bool) -> BigRational {
    BigRational::from_integer(if negative { -c } else { c })
}

/// The real basis functions exactly as printed, sums and ranges verbatim.
pub fn printed_basis(family: BasisFamily, k: u32) -> ClosedForm {
    let k = k as u64;
    let mut num = Vec::new();
    let den;
    match family {
        BasisFamily::F1 => {
            den = 2 * k - 1;
            num.resize(2 * k as usize, BigRational::from_integer(0.into()));
            for l in 0..k {
                num[(2 * k - 2 * l - 1) as usize] = signed(binomial(2 * k - 1, 2 * l), l % 2 == 1);
            }
        }
        BasisFamily::F2 => {
            den = 2 * k - 1;
            num.resize(2 * k as usize, BigRational::from_integer(0.into()));
            for l in 1..=k {
                num[(2 * k - 2 * l) as usize] = signed(binomial(2 * k - 1, 2 * l - 1), false);
            }
        }
        BasisFamily::G1 => {
            den = 2 * k;
            num.resize(2 * k as usize + 1, BigRational::from_integer(0.into()));
            for l in 0..k {
                num[(2 * k - 2 * l) as usize] = signed(binomial(2 * k, 2 * l), l % 2 == 1);
            }
        }
        BasisFamily::G2 => {
            den = 2 * k;
            num.resize(2 * k as usize + 1, BigRational::from_integer(0.into()));
            for l in 1..=k {
                num[(2 * k - 2 * l + 1) as usize] = signed(binomial(2 * k, 2 * l - 1), false);
            }
        }
    }
    ClosedForm::real_fraction(&num, den as u32)
}

/// `s` with `a = s·b`, if the two are proportional.
pub fn proportionality(a: &ClosedForm, b: &ClosedForm) -> Option<G> {
    let (exp, r) = b.terms().next()?;
    let ra = a.coefficient(*exp);
    let pick = |x: &crate::exprcore::RationalFunctionPM, y: &crate::exprcore::RationalFunctionPM| {
        for (i, c) in y.poly_coeffs().iter().enumerate() {
            if !c.is_zero() {
                return Some((x.poly_coeffs().get(i).cloned().unwrap_or_else(G::zero), c.clone()));
            }
        }
        for pole in [Pole::PlusI, Pole::MinusI] {
            for (i, c) in y.poles(pole).iter().enumerate() {
                if !c.is_zero() {
                    return Some((x.poles(pole).get(i).cloned().unwrap_or_else(G::zero), c.clone()));
                }
            }
        }
        None
    };
    let (num, den) = pick(&ra, r)?;
    let s = num * den.inv()?;
    (b.scale(&s) == *a).then_some(s)
}

#[derive(Clone, Debug)]
pub struct AuditRow {
    pub family: BasisFamily,
    pub k: u32,
    pub printed: ClosedForm,
    pub derived: ClosedForm,
    /// `printed = scalar · derived` when proportional.
    pub scalar: Option<G>,
    /// Level-`k` homogeneous residual of the printed formula.
    pub printed_residual: ClosedForm,
    /// For odd chains: residual of the derived basis under the alternative
    /// first-derivative coefficient `2(2k+1)k`.
    pub alt_coefficient_residual: Option<ClosedForm>,
}

impl AuditRow {
    pub fn exact_match(&self) -> bool {
        self.scalar.as_ref().is_some_and(G::is_one)
    }

    pub fn proportional(&self) -> bool {
        self.scalar.is_some()
    }
}

pub fn paper_basis_audit(kmax: u32) -> Vec<AuditRow> {
    let mut rows = Vec::new();
    for family in BasisFamily::ALL {
        for k in 1..=kmax {
            let printed = printed_basis(family, k);
            let derived = level_basis(family.parity(), k, family.branch());
            let alt = (family.parity() == Parity::Odd).then(|| homogeneous_residual_alt_odd(&derived, k));
            rows.push(AuditRow {
                family,
                k,
                scalar: proportionality(&printed, &derived),
                printed_residual: homogeneous_residual(&printed, family.parity(), k),
                printed,
                derived,
                alt_coefficient_residual: alt,
            });
        }
    }
    rows
}
