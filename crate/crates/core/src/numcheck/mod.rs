//! Floating-point shadows of the exact results.
//!
//! Derivatives here come from forward-mode automatic differentiation, not
//! from the symbolic differentiation being checked.

mod ad;

pub use ad::{closed_form_jet, qpoly_jet, Dual, Jet2};

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exprcore::{rat_to_f64, ClosedForm};
use crate::hierarchy::ContactPolynomial;
use crate::jetcalc::{JetExpr, JetIndex, JetVar};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `(re, im)` of a closed form at real `p`, logarithms on the branch
/// continuous along the real axis.
pub fn eval_closedform(e: &ClosedForm, p: f64) -> (f64, f64) {
    let v = e.eval(Complex64::new(p, 0.0));
    (v.re, v.im)
}

/// Values for `x^i`, `u`, `u_σ` and the potentials `s^i`.
#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub n: usize,
    pub x: Vec<f64>,
    pub u: f64,
    pub jets: BTreeMap<JetIndex, f64>,
    pub s: Vec<f64>,
}

impl SamplePoint {
    /// First derivatives in `[−5, 5]`, everything else in `[−2, 2]`. With
    /// `on_equation` the last pure second derivative is solved from the
    /// equation, which requires `order ≤ 2`.
    pub fn random(rng: &mut impl Rng, n: usize, order: usize, on_equation: bool) -> Self {
        let x = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let u = rng.random_range(-2.0..2.0);
        let s = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let mut jets = BTreeMap::new();
        for idx in JetIndex::all_up_to(n, order).into_iter().skip(1) {
            let r = if idx.order() == 1 { 5.0 } else { 2.0 };
            jets.insert(idx, rng.random_range(-r..r));
        }
        let mut pt = Self { n, x, u, jets, s };
        if on_equation {
            assert!(order == 2, "on-equation sampling is implemented for second-order jets");
            let nn = JetIndex::new(vec![(n - 1) as u8; 2]);
            pt.jets.insert(nn.clone(), 0.0);
            let rest = pt.equation_value();
            let un = pt.du(n - 1);
            let coeff = pt.l() * pt.l() - un * un;
            pt.jets.insert(nn, -rest / coeff);
        }
        pt
    }

    pub fn du(&self, i: usize) -> f64 {
        self.jets[&JetIndex::single(i)]
    }

    pub fn jet(&self, s: &JetIndex) -> f64 {
        if s.order() == 0 {
            self.u
        } else {
            self.jets[s]
        }
    }

    /// `+√(1 + Σ u_i²)`.
    pub fn l(&self) -> f64 {
        (1.0 + (0..self.n).map(|i| self.du(i).powi(2)).sum::<f64>()).sqrt()
    }

    /// `Σ_i u_ii L² − Σ_{i,j} u_i u_j u_ij` evaluated directly.
    pub fn equation_value(&self) -> f64 {
        let w = self.l().powi(2);
        let mut f = 0.0;
        for i in 0..self.n {
            f += self.jet(&JetIndex::new(vec![i as u8; 2])) * w;
            for j in 0..self.n {
                f -= self.du(i) * self.du(j) * self.jet(&JetIndex::new(vec![i as u8, j as u8]));
            }
        }
        f
    }

    pub fn value(&self, v: &JetVar) -> f64 {
        match v {
            JetVar::X(i) => self.x[*i as usize],
            JetVar::U(s) => self.jet(s),
            JetVar::S(i) => self.s[*i as usize],
            JetVar::L => self.l(),
        }
    }

    pub fn eval(&self, e: &JetExpr<BigRational>) -> f64 {
        e.eval(|v| self.value(v)).re
    }

    /// `D_i e` by forward differentiation along the total-derivative
    /// direction; `L` is differentiated as `√(1 + Σ u_j²)`. `None` when a
    /// needed jet is missing or a potential other than `s^i` occurs.
    pub fn total_derivative(&self, e: &JetExpr<BigRational>, i: usize) -> Option<f64> {
        let dual_of = |v: &JetVar| -> Option<Dual> {
            Some(match v {
                JetVar::X(j) => Dual::new(self.x[*j as usize], if *j as usize == i { 1.0 } else { 0.0 }),
                JetVar::U(s) => Dual::new(self.jet(s), *self.jets.get(&s.with(i))?),
                JetVar::S(j) => {
                    if *j as usize != i {
                        return None;
                    }
                    Dual::new(self.s[i], self.l())
                }
                JetVar::L => {
                    let mut w = Dual::new(1.0, 0.0);
                    for j in 0..self.n {
                        let uj = Dual::new(self.du(j), self.jets[&JetIndex::single(j).with(i)]);
                        w = w + uj * uj;
                    }
                    w.sqrt()
                }
            })
        };
        let mut num = Dual::new(0.0, 0.0);
        for (m, c) in e.numerator().terms() {
            let mut t = Dual::new(rat_to_f64(c), 0.0);
            for (v, pw) in m {
                t = t * dual_of(v)?.powi(*pw as i32);
            }
            num = num + t;
        }
        let l = dual_of(&JetVar::L)?;
        Some((num / l.powi(e.l_power() as i32)).d)
    }
}

#[derive(Clone, Debug)]
pub enum Claim<'a> {
    /// `(1+p²)φ_pp + 2pqφ_pq + (1+q²)φ_qq = 0`.
    DeterminingEquation(&'a ContactPolynomial),
    /// `Σ_i D_i(flux_i) = 0`, optionally only on the equation.
    Divergence { flux: &'a [JetExpr<BigRational>], on_equation: bool },
    /// `φ F / L³` is a total divergence of functions of `(u_x, u_y)`:
    /// with `a, c, b` its coefficients of `u_xx, u_xy, u_yy`,
    /// `a_qq − c_pq + b_pp = 0`.
    DivergenceCondition(&'a ContactPolynomial),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub label: String,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    /// Largest `|value| / (1 + scale)` observed.
    pub max_residual: f64,
    pub failures: usize,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} seed={} trials={} tol={:e} max_residual={:.3e} {}",
            self.label,
            self.seed,
            self.trials,
            self.tol,
            self.max_residual,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

fn claim_value(claim: &Claim<'_>, rng: &mut ChaCha8Rng) -> (f64, f64) {
    match claim {
        Claim::DeterminingEquation(phi) => {
            let p = rng.random_range(-5.0..5.0);
            let q = rng.random_range(-5.0..5.0);
            let j = qpoly_jet(phi.poly(), Jet2::var_p(p), Jet2::var_q(q));
            let terms = [(1.0 + p * p) * j.dpp, 2.0 * p * q * j.dpq, (1.0 + q * q) * j.dqq];
            (terms.iter().sum::<Complex64>().norm(), terms.iter().map(|t| t.norm()).sum())
        }
        Claim::DivergenceCondition(phi) => {
            let p = rng.random_range(-5.0..5.0);
            let q = rng.random_range(-5.0..5.0);
            let (pj, qj) = (Jet2::var_p(p), Jet2::var_q(q));
            let one = Jet2::real(1.0);
            let phi = qpoly_jet(phi.poly(), pj, qj);
            let l3 = (one + pj * pj + qj * qj).sqrt().powi(3);
            let base = phi / l3;
            let a = base * (one + qj * qj);
            let b = base * (one + pj * pj);
            let c = base * pj * qj.scale(Complex64::new(-2.0, 0.0));
            let terms = [a.dqq, -c.dpq, b.dpp];
            (terms.iter().sum::<Complex64>().norm(), terms.iter().map(|t| t.norm()).sum())
        }
        Claim::Divergence { flux, on_equation } => {
            let n = flux.first().map_or(1, |f| f.dim());
            let pt = SamplePoint::random(rng, n, 2, *on_equation);
            let parts: Vec<f64> = flux
                .iter()
                .enumerate()
                .map(|(i, f)| pt.total_derivative(f, i).unwrap_or(f64::NAN))
                .collect();
            (parts.iter().sum::<f64>().abs(), parts.iter().map(|t| t.abs()).sum())
        }
    }
}

/// Evaluates the claim at `trials` random points; a trial fails when
/// `|value| ≥ tol·(1 + scale)`, with `scale` the sum of the magnitudes of
/// the terms that should cancel.
pub fn sample_verify(label: &str, claim: &Claim<'_>, trials: usize, tol: f64, seed: u64) -> SampleReport {
    assert!(trials >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..trials {
        let (value, scale) = claim_value(claim, &mut rng);
        let rel = value / (1.0 + scale);
        if rel.is_nan() || rel >= tol {
            failures += 1;
        }
        max_residual = if rel.is_nan() { f64::NAN } else { max_residual.max(rel) };
    }
    SampleReport { label: label.to_string(), seed, trials, tol, max_residual, failures }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FdReport {
    pub p: f64,
    pub h: f64,
    pub derivative: f64,
    pub error_h: f64,
    pub error_half: f64,
    /// `log₂(error_h / error_half)` when the errors exceed the rounding floor.
    pub observed_order: Option<f64>,
    pub passed: bool,
}

/// Central differences at step `h` and `h/2` against the exact derivative.
pub fn fd_crosscheck(e: &ClosedForm, p: f64, h: f64) -> FdReport {
    let f = |x: f64| e.eval(Complex64::new(x, 0.0)).re;
    let exact = e.differentiate().eval(Complex64::new(p, 0.0)).re;
    let central = |h: f64| (f(p + h) - f(p - h)) / (2.0 * h);
    let error_h = (central(h) - exact).abs();
    let error_half = (central(h / 2.0) - exact).abs();
    let floor = 64.0 * f64::EPSILON * (1.0 + f(p).abs()) / (h / 2.0);
    let (observed_order, passed) = if error_h <= floor && error_half <= floor {
        (None, true)
    } else {
        let order = (error_h / error_half).log2();
        (Some(order), order >= 1.9)
    };
    FdReport { p, h, derivative: exact, error_h, error_half, observed_order, passed }
}
