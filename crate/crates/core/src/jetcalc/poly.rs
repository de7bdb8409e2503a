//! Sparse multivariate polynomials over a coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exprcore::{rat_to_f64, QPoly};

/// Coefficient rings for jet expressions.
///
/// Besides the rationals, a ring may carry first-order jet coordinates
/// internally: [`QPoly`] holds closed-form functions of `u_x` and
/// polynomials in `u_y`, so those two coordinates never appear as
/// polynomial variables when it is used.
pub trait JetCoeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: BigRational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn div_exact(&self, o: &Self) -> Option<Self>;
    /// The coordinate `u_{1_j}` when it lives inside the coefficient ring.
    fn first_order(n: usize, j: usize) -> Option<Self>;
    /// `∂/∂u_{1_j}` of a coefficient.
    fn partial_first(&self, j: usize) -> Self;
    /// Numeric value given the first-order coordinates `u_{1_j}`.
    fn eval(&self, first: &[f64]) -> Complex64;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl JetCoeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: BigRational) -> Self {
        r
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn first_order(_n: usize, _j: usize) -> Option<Self> {
        None
    }
    fn partial_first(&self, _j: usize) -> Self {
        Zero::zero()
    }
    fn eval(&self, _first: &[f64]) -> Complex64 {
        Complex64::new(rat_to_f64(self), 0.0)
    }
}

/// Only meaningful for `n = 2`, with `u_x = p` and `u_y = q`.
impl JetCoeff for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn from_rational(r: BigRational) -> Self {
        QPoly::from_rational(r)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        self.try_div(o)
    }
    fn first_order(n: usize, j: usize) -> Option<Self> {
        assert_eq!(n, 2, "closed-form coefficients model the two-dimensional jet space only");
        match j {
            0 => Some(QPoly::p()),
            1 => Some(QPoly::q()),
            _ => None,
        }
    }
    fn partial_first(&self, j: usize) -> Self {
        match j {
            0 => self.d_dp(),
            1 => self.d_dq(),
            _ => QPoly::zero(),
        }
    }
    fn eval(&self, first: &[f64]) -> Complex64 {
        QPoly::eval(self, Complex64::new(first[0], 0.0), Complex64::new(first[1], 0.0))
    }
}

/// Monomial as a sorted list of `(variable, exponent > 0)`.
pub type Monomial<V> = Vec<(V, u32)>;

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<V: Ord + Clone, C: JetCoeff> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<V: Ord + Clone, C: JetCoeff> Default for MPoly<V, C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

fn mono_mul<V: Ord + Clone>(a: &Monomial<V>, b: &Monomial<V>) -> Monomial<V> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a / b` if `b` divides `a`.
fn mono_div<V: Ord + Clone>(a: &Monomial<V>, b: &Monomial<V>) -> Option<Monomial<V>> {
    let mut out = Vec::new();
    let mut j = 0;
    for (v, e) in a {
        if j < b.len() && b[j].0 < *v {
            return None;
        }
        if j < b.len() && b[j].0 == *v {
            match e.cmp(&b[j].1) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v.clone(), e - b[j].1)),
            }
            j += 1;
        } else {
            out.push((v.clone(), *e));
        }
    }
    (j == b.len()).then_some(out)
}

/// Lexicographic monomial order, smaller variables weighing more.
fn lex_cmp<V: Ord + Clone>(a: &Monomial<V>, b: &Monomial<V>) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(eb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    o => return o,
                },
            },
        }
    }
}

impl<V: Ord + Clone, C: JetCoeff> MPoly<V, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(v: V) -> Self {
        Self::term(vec![(v, 1)], C::one())
    }

    pub fn term(m: Monomial<V>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.plus(&c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.times(k));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), c1.times(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Maps each term's coefficient; used for coefficient derivations.
    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `∂/∂v`, treating coefficients as constants.
    pub fn partial(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|(w, _)| w == v) {
                let e = m[pos].1;
                let mut nm = m.clone();
                if e == 1 {
                    nm.remove(pos);
                } else {
                    nm[pos].1 -= 1;
                }
                out.add_term(nm, c.times(&C::from_rational(BigRational::from_integer(e.into()))));
            }
        }
        out
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.iter().find(|(w, _)| w == v).map(|(_, e)| *e))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of the powers of `v`.
    pub fn split_by(&self, v: &V) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = match rest.iter().position(|(w, _)| w == v) {
                Some(pos) => rest.remove(pos).1,
                None => 0,
            };
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// All variables that occur.
    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v.clone())).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn leading(&self) -> Option<(&Monomial<V>, &C)> {
        self.terms.iter().max_by(|a, b| lex_cmp(a.0, b.0))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = mono_div(rm, &dm)?;
            let qc = rc.div_exact(&dc)?;
            let t = Self::term(qm, qc);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Evaluates with a variable assignment and a coefficient evaluator.
    pub fn eval_with(&self, coeff: impl Fn(&C) -> Complex64, var: impl Fn(&V) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (v, e) in m {
                t *= var(v).powu(*e);
            }
            acc += t;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprcore::int;

    type P = MPoly<u8, BigRational>;

    fn x() -> P {
        P::var(0)
    }
    fn y() -> P {
        P::var(1)
    }

    #[test]
    fn exact_division() {
        let w = P::one().add(&x().mul(&x())).add(&y().mul(&y()));
        let f = x().mul(&y()).add(&P::constant(int(3)));
        let prod = w.mul(&f);
        assert_eq!(prod.div_exact(&w).unwrap(), f);
        assert!(prod.add(&x()).div_exact(&w).is_none());
    }

    #[test]
    fn lex_order_is_multiplicative() {
        let a: Monomial<u8> = vec![(0, 1)];
        let b: Monomial<u8> = vec![(1, 1)];
        assert_eq!(lex_cmp(&a, &b), Ordering::Greater);
        let c: Monomial<u8> = vec![(0, 1)];
        assert_eq!(lex_cmp(&mono_mul(&a, &c), &mono_mul(&b, &c)), Ordering::Greater);
    }

    #[test]
    fn partials_and_split() {
        let p = x().pow(3).mul(&y()).add(&y());
        assert_eq!(p.partial(&0), x().pow(2).mul(&y()).scale(&int(3)));
        let parts = p.split_by(&0);
        assert_eq!(parts[&3], y());
        assert_eq!(parts[&0], y());
    }
}
