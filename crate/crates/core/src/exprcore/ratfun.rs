//! Rational functions of `p` whose only poles sit at `p = ±i`, kept in
//! canonical partial-fraction form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gaussian::{binomial, GaussianRational as G};

/// `poly(p) + Σ_j a_j (p+i)^{-j} + Σ_j b_j (p-i)^{-j}`.
///
/// Canonical: trailing zero coefficients are stripped from all three lists,
/// so two values are equal exactly when they denote the same function.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalFunctionPM {
    /// `poly[a]` multiplies `p^a`.
    poly: Vec<G>,
    /// `pole_minus_i[j-1]` multiplies `(p+i)^{-j}` (pole at `p = -i`).
    pole_minus_i: Vec<G>,
    /// `pole_plus_i[j-1]` multiplies `(p-i)^{-j}` (pole at `p = +i`).
    pole_plus_i: Vec<G>,
}

fn strip(v: &mut Vec<G>) {
    while v.last().is_some_and(G::is_zero) {
        v.pop();
    }
}

fn bump(v: &mut Vec<G>, idx: usize, c: &G) {
    if c.is_zero() {
        return;
    }
    if v.len() <= idx {
        v.resize(idx + 1, G::zero());
    }
    v[idx] += c;
}

/// Which of the two poles a term refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pole {
    /// `p = +i`, factor `(p - i)`.
    PlusI,
    /// `p = -i`, factor `(p + i)`.
    MinusI,
}

impl Pole {
    /// The point `p0` with factor `(p - p0)`.
    fn location(self) -> G {
        match self {
            Pole::PlusI => G::i(),
            Pole::MinusI => -G::i(),
        }
    }

    fn other(self) -> Pole {
        match self {
            Pole::PlusI => Pole::MinusI,
            Pole::MinusI => Pole::PlusI,
        }
    }
}

impl RationalFunctionPM {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: G) -> Self {
        let mut r = Self { poly: vec![c], ..Self::default() };
        r.canonicalize();
        r
    }

    pub fn one() -> Self {
        Self::constant(G::one())
    }

    /// `c · p^a`.
    pub fn monomial(c: G, a: usize) -> Self {
        let mut r = Self::zero();
        bump(&mut r.poly, a, &c);
        r
    }

    /// `c · (p - p0)^{-j}` for `j ≥ 1`.
    pub fn pole(c: G, pole: Pole, j: usize) -> Self {
        assert!(j >= 1, "pole order must be positive");
        let mut r = Self::zero();
        bump(r.pole_vec_mut(pole), j - 1, &c);
        r
    }

    /// Polynomial from coefficients in increasing degree.
    pub fn from_poly(coeffs: Vec<G>) -> Self {
        let mut r = Self { poly: coeffs, ..Self::default() };
        r.canonicalize();
        r
    }

    /// `c · (p - i)^a (p + i)^b` for arbitrary integer exponents.
    pub fn pole_monomial(c: G, a: i64, b: i64) -> Self {
        let mut acc = Self::constant(c);
        let lin = |pole: Pole| Self::from_poly(vec![-pole.location(), G::one()]);
        for (e, pole) in [(a, Pole::PlusI), (b, Pole::MinusI)] {
            let factor = if e >= 0 {
                lin(pole)
            } else {
                Self::pole(G::one(), pole, 1)
            };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&factor);
            }
        }
        acc
    }

    pub fn poly_coeffs(&self) -> &[G] {
        &self.poly
    }

    pub fn poles(&self, pole: Pole) -> &[G] {
        match pole {
            Pole::PlusI => &self.pole_plus_i,
            Pole::MinusI => &self.pole_minus_i,
        }
    }

    fn pole_vec_mut(&mut self, pole: Pole) -> &mut Vec<G> {
        match pole {
            Pole::PlusI => &mut self.pole_plus_i,
            Pole::MinusI => &mut self.pole_minus_i,
        }
    }

    /// Coefficient of the simple pole `(p - p0)^{-1}`.
    pub fn residue(&self, pole: Pole) -> G {
        self.poles(pole).first().cloned().unwrap_or_default()
    }

    /// Highest pole order at either point (0 for a polynomial).
    pub fn max_pole_order(&self) -> usize {
        self.pole_plus_i.len().max(self.pole_minus_i.len())
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.pole_minus_i.is_empty() && self.pole_plus_i.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.pole_minus_i.is_empty() && self.pole_plus_i.is_empty()
    }

    fn canonicalize(&mut self) {
        strip(&mut self.poly);
        strip(&mut self.pole_minus_i);
        strip(&mut self.pole_plus_i);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (i, c) in o.poly.iter().enumerate() {
            bump(&mut self.poly, i, c);
        }
        for (i, c) in o.pole_minus_i.iter().enumerate() {
            bump(&mut self.pole_minus_i, i, c);
        }
        for (i, c) in o.pole_plus_i.iter().enumerate() {
            bump(&mut self.pole_plus_i, i, c);
        }
        self.canonicalize();
    }

    pub fn neg(&self) -> Self {
        self.scale(&G::from_int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &G) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let f = |v: &Vec<G>| v.iter().map(|x| x * c).collect();
        Self {
            poly: f(&self.poly),
            pole_minus_i: f(&self.pole_minus_i),
            pole_plus_i: f(&self.pole_plus_i),
        }
    }

    /// Complex conjugation `i ↦ -i`, which swaps the two poles.
    pub fn conj(&self) -> Self {
        let f = |v: &Vec<G>| v.iter().map(G::conj).collect();
        Self {
            poly: f(&self.poly),
            pole_minus_i: f(&self.pole_plus_i),
            pole_plus_i: f(&self.pole_minus_i),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        // polynomial × polynomial
        for (a, ca) in self.poly.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in o.poly.iter().enumerate() {
                bump(&mut out.poly, a + b, &(ca * cb));
            }
        }
        for pole in [Pole::PlusI, Pole::MinusI] {
            // polynomial × pole, both orders of operands
            for (x, y) in [(self, o), (o, self)] {
                for (a, ca) in x.poly.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (j, cb) in y.poles(pole).iter().enumerate() {
                        if !cb.is_zero() {
                            out.add_power_times_pole(&(ca * cb), a, pole, j + 1);
                        }
                    }
                }
            }
            // same-pole products
            for (j, ca) in self.poles(pole).iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (k, cb) in o.poles(pole).iter().enumerate() {
                    bump(out.pole_vec_mut(pole), j + k + 1, &(ca * cb));
                }
            }
        }
        // (p-i)^{-j} (p+i)^{-k}, both orders of operands
        for (x, y) in [(self, o), (o, self)] {
            for (j, ca) in x.pole_plus_i.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (k, cb) in y.pole_minus_i.iter().enumerate() {
                    if !cb.is_zero() {
                        out.add_mixed_poles(&(ca * cb), j + 1, k + 1);
                    }
                }
            }
        }
        out.canonicalize();
        out
    }

    /// Accumulates `c · p^a · (p - p0)^{-j}`.
    fn add_power_times_pole(&mut self, c: &G, a: usize, pole: Pole, j: usize) {
        // p = t + p0 with t = p - p0
        let p0 = pole.location();
        for m in 0..=a {
            let coeff = c * &(&G::real(BigRational::from_integer(binomial(a as u64, m as u64)))
                * &p0.pow((a - m) as i64));
            if coeff.is_zero() {
                continue;
            }
            if m < j {
                bump(self.pole_vec_mut(pole), j - m - 1, &coeff);
            } else {
                // t^{m-j} = (p - p0)^{m-j} expanded in p
                let e = m - j;
                let neg_p0 = -&p0;
                for r in 0..=e {
                    let term = &coeff
                        * &(&G::real(BigRational::from_integer(binomial(e as u64, r as u64)))
                            * &neg_p0.pow((e - r) as i64));
                    bump(&mut self.poly, r, &term);
                }
            }
        }
    }

    /// Accumulates `c · (p - i)^{-j} (p + i)^{-k}` as partial fractions.
    fn add_mixed_poles(&mut self, c: &G, j: usize, k: usize) {
        for (pole, own, other_order) in [(Pole::PlusI, j, k), (Pole::MinusI, k, j)] {
            // around p0 the other factor is (t + d)^{-other_order}, d = p0 - other location
            let d = &pole.location() - &pole.other().location();
            for r in 0..own {
                // C(-n, r) = (-1)^r C(n + r - 1, r)
                let mut b = BigRational::from_integer(binomial((other_order + r - 1) as u64, r as u64));
                if r % 2 == 1 {
                    b = -b;
                }
                let coeff = c * &(&G::real(b) * &d.pow(-((other_order + r) as i64)));
                bump(self.pole_vec_mut(pole), own - r - 1, &coeff);
            }
        }
    }

    /// `d/dp`.
    pub fn differentiate(&self) -> Self {
        let mut out = Self::zero();
        for (a, c) in self.poly.iter().enumerate().skip(1) {
            bump(&mut out.poly, a - 1, &c.scale(&BigRational::from_integer(BigInt::from(a))));
        }
        for pole in [Pole::PlusI, Pole::MinusI] {
            for (j, c) in self.poles(pole).iter().enumerate() {
                let order = j + 1;
                let s = BigRational::from_integer(BigInt::from(-(order as i64)));
                bump(out.pole_vec_mut(pole), order, &c.scale(&s));
            }
        }
        out.canonicalize();
        out
    }

    /// Rational part of the antiderivative plus the two simple-pole residues,
    /// whose integrals are logarithms.
    pub fn integrate_rational_part(&self) -> (Self, G, G) {
        let mut out = Self::zero();
        for (a, c) in self.poly.iter().enumerate() {
            bump(&mut out.poly, a + 1, &c.scale(&BigRational::new(1.into(), BigInt::from(a + 1))));
        }
        for pole in [Pole::PlusI, Pole::MinusI] {
            for (j, c) in self.poles(pole).iter().enumerate().skip(1) {
                let order = j + 1;
                // ∫ (p-p0)^{-n} = (p-p0)^{1-n} / (1-n)
                let s = BigRational::new(1.into(), BigInt::from(1 - order as i64));
                bump(out.pole_vec_mut(pole), order - 2, &c.scale(&s));
            }
        }
        out.canonicalize();
        (out, self.residue(Pole::PlusI), self.residue(Pole::MinusI))
    }

    /// Drops both simple-pole terms.
    pub fn without_residues(&self) -> Self {
        let mut r = self.clone();
        for pole in [Pole::PlusI, Pole::MinusI] {
            if let Some(c) = r.pole_vec_mut(pole).first_mut() {
                *c = G::zero();
            }
        }
        r.canonicalize();
        r
    }

    /// Numerator `N` and exponent `m` with `self = N(p) / (1+p²)^m`, `m` minimal.
    pub fn over_one_plus_p2(&self) -> (Vec<G>, usize) {
        let m = self.max_pole_order();
        let one_plus_p2 = vec![G::one(), G::zero(), G::one()];
        let lin = |p0: G| vec![-p0, G::one()];
        let mut num = poly_mul(&self.poly, &poly_pow(&one_plus_p2, m));
        for pole in [Pole::PlusI, Pole::MinusI] {
            for (j, c) in self.poles(pole).iter().enumerate() {
                let order = j + 1;
                let f = poly_mul(
                    &poly_pow(&lin(pole.location()), m - order),
                    &poly_pow(&lin(pole.other().location()), m),
                );
                num = poly_add(&num, &poly_scale(&f, c));
            }
        }
        let mut m = m;
        while m > 0 {
            match poly_div_exact(&num, &one_plus_p2) {
                Some(q) => {
                    num = q;
                    m -= 1;
                }
                None => break,
            }
        }
        (num, m)
    }

    /// If the function is `c (p-i)^a (p+i)^b` with `a, b ≥ 0` (a polynomial
    /// with roots only at `±i`), returns `(c, a, b)`.
    pub fn as_root_monomial(&self) -> Option<(G, usize, usize)> {
        if !self.is_polynomial() || self.is_zero() {
            return None;
        }
        let mut num = self.poly.clone();
        let mut exps = [0usize; 2];
        for (slot, root) in [(0usize, G::i()), (1, -G::i())] {
            while num.len() > 1 {
                match poly_div_exact(&num, &[-root.clone(), G::one()]) {
                    Some(q) => {
                        num = q;
                        exps[slot] += 1;
                    }
                    None => break,
                }
            }
        }
        (num.len() == 1).then(|| (num[0].clone(), exps[0], exps[1]))
    }

    pub fn eval(&self, p: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        let mut pw = num_complex::Complex64::new(1.0, 0.0);
        for c in &self.poly {
            acc += c.to_complex() * pw;
            pw *= p;
        }
        for pole in [Pole::PlusI, Pole::MinusI] {
            let t = p - pole.location().to_complex();
            let inv = 1.0 / t;
            let mut pw = inv;
            for c in self.poles(pole) {
                acc += c.to_complex() * pw;
                pw *= inv;
            }
        }
        acc
    }
}

pub(crate) fn poly_add(a: &[G], b: &[G]) -> Vec<G> {
    let mut out = a.to_vec();
    for (i, c) in b.iter().enumerate() {
        bump(&mut out, i, c);
    }
    strip(&mut out);
    out
}

pub(crate) fn poly_scale(a: &[G], c: &G) -> Vec<G> {
    let mut out: Vec<G> = a.iter().map(|x| x * c).collect();
    strip(&mut out);
    out
}

pub(crate) fn poly_mul(a: &[G], b: &[G]) -> Vec<G> {
    let mut out = Vec::new();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            bump(&mut out, i + j, &(x * y));
        }
    }
    strip(&mut out);
    out
}

pub(crate) fn poly_pow(a: &[G], e: usize) -> Vec<G> {
    let mut acc = vec![G::one()];
    for _ in 0..e {
        acc = poly_mul(&acc, a);
    }
    acc
}

/// Exact division of polynomials; `None` when the remainder is nonzero.
pub(crate) fn poly_div_exact(num: &[G], den: &[G]) -> Option<Vec<G>> {
    let mut rem = num.to_vec();
    strip(&mut rem);
    let dlen = den.len();
    assert!(dlen > 0 && !den[dlen - 1].is_zero(), "division by zero polynomial");
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < dlen {
        return None;
    }
    let lead_inv = den[dlen - 1].inv()?;
    let mut quot = vec![G::zero(); rem.len() - dlen + 1];
    for shift in (0..quot.len()).rev() {
        let c = &rem[shift + dlen - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (k, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[shift + k] -= &t;
        }
        quot[shift] = c;
    }
    strip(&mut rem);
    if !rem.is_empty() {
        return None;
    }
    strip(&mut quot);
    Some(quot)
}

impl fmt::Debug for RationalFunctionPM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunctionPM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, c) in self.poly.iter().enumerate() {
            if !c.is_zero() {
                parts.push(match a {
                    0 => format!("{c}"),
                    1 => format!("{c}*p"),
                    _ => format!("{c}*p^{a}"),
                });
            }
        }
        for (pole, label) in [(Pole::MinusI, "p+i"), (Pole::PlusI, "p-i")] {
            for (j, c) in self.poles(pole).iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!("{c}*({label})^-{}", j + 1));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::gaussian::rat;
    use super::*;

    fn p() -> RationalFunctionPM {
        RationalFunctionPM::monomial(G::one(), 1)
    }

    #[test]
    fn simple_pole_product_splits() {
        // 1/((p-i)(p+i)) = (i/2)(p+i)^{-1} - (i/2)(p-i)^{-1}
        let a = RationalFunctionPM::pole(G::one(), Pole::PlusI, 1);
        let b = RationalFunctionPM::pole(G::one(), Pole::MinusI, 1);
        let half_i = G::new(rat(0, 1), rat(1, 2));
        let expected = RationalFunctionPM::pole(half_i.clone(), Pole::MinusI, 1)
            .add(&RationalFunctionPM::pole(-half_i, Pole::PlusI, 1));
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn pole_times_its_factor_cancels() {
        // (p - i) · (p - i)^{-3} = (p - i)^{-2}
        let lin = RationalFunctionPM::from_poly(vec![-G::i(), G::one()]);
        let pole3 = RationalFunctionPM::pole(G::one(), Pole::PlusI, 3);
        assert_eq!(lin.mul(&pole3), RationalFunctionPM::pole(G::one(), Pole::PlusI, 2));
        // (p+i)^2 (p+i)^{-1} = p + i
        let sq = RationalFunctionPM::pole_monomial(G::one(), 0, 2);
        let inv = RationalFunctionPM::pole(G::one(), Pole::MinusI, 1);
        assert_eq!(sq.mul(&inv), RationalFunctionPM::from_poly(vec![G::i(), G::one()]));
    }

    #[test]
    fn one_plus_p2_inverse() {
        let one_plus_p2 = RationalFunctionPM::from_poly(vec![G::one(), G::zero(), G::one()]);
        let inv = RationalFunctionPM::pole_monomial(G::one(), -1, -1);
        assert_eq!(one_plus_p2.mul(&inv), RationalFunctionPM::one());
        assert_eq!(one_plus_p2.as_root_monomial(), Some((G::one(), 1, 1)));
        assert_eq!(p().as_root_monomial(), None);
    }

    #[test]
    fn numerator_over_one_plus_p2() {
        // (p-i)^{-2} + (p+i)^{-2} = 2(p²-1)/(1+p²)²
        let e = RationalFunctionPM::pole(G::one(), Pole::PlusI, 2)
            .add(&RationalFunctionPM::pole(G::one(), Pole::MinusI, 2));
        let (num, m) = e.over_one_plus_p2();
        assert_eq!(m, 2);
        assert_eq!(num, vec![G::from_int(-2), G::zero(), G::from_int(2)]);
    }

    #[test]
    fn derivative_of_pole() {
        let e = RationalFunctionPM::pole(G::one(), Pole::PlusI, 2);
        assert_eq!(e.differentiate(), RationalFunctionPM::pole(G::from_int(-2), Pole::PlusI, 3));
    }
}
