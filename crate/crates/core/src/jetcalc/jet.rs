//! Jet coordinates and expressions `P / L^m` with `L = √(1 + Σ u_j²)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use super::poly::{JetCoeff, MPoly, Monomial};
use super::JetError;

/// Multi-index as a sorted multiset of zero-based variable indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct JetIndex(Vec<u8>);

impl JetIndex {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut idx: Vec<u8>) -> Self {
        idx.sort_unstable();
        Self(idx)
    }

    pub fn single(i: usize) -> Self {
        Self(vec![i as u8])
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn count(&self, i: usize) -> usize {
        self.0.iter().filter(|&&j| j as usize == i).count()
    }

    /// `σ + 1_i`.
    pub fn with(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        let pos = v.partition_point(|&j| j as usize <= i);
        v.insert(pos, i as u8);
        Self(v)
    }

    /// `σ - 1_i`, if `i ∈ σ`.
    pub fn without(&self, i: usize) -> Option<Self> {
        let pos = self.0.iter().position(|&j| j as usize == i)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Self(v))
    }

    /// Number of distinct orderings, `|σ|! / Π σ_j!`.
    pub fn arrangements(&self) -> BigInt {
        let fact = |k: usize| (1..=k).fold(BigInt::one(), |a, b| a * b);
        let mut den = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let run = self.0[i..].iter().take_while(|&&j| j == self.0[i]).count();
            den *= fact(run);
            i += run;
        }
        fact(self.0.len()) / den
    }

    /// All sub-multisets `ρ ⊆ σ`, paired with their complements.
    pub fn splits(&self) -> Vec<(JetIndex, JetIndex)> {
        let mut runs: Vec<(u8, usize)> = Vec::new();
        for &j in &self.0 {
            match runs.last_mut() {
                Some((v, c)) if *v == j => *c += 1,
                _ => runs.push((j, 1)),
            }
        }
        let mut out = vec![(Vec::new(), Vec::new())];
        for (v, c) in runs {
            let mut next = Vec::new();
            for (rho, eta) in &out {
                for take in 0..=c {
                    let mut r: Vec<u8> = rho.clone();
                    let mut e: Vec<u8> = eta.clone();
                    r.extend(std::iter::repeat_n(v, take));
                    e.extend(std::iter::repeat_n(v, c - take));
                    next.push((r, e));
                }
            }
            out = next;
        }
        out.into_iter().map(|(r, e)| (JetIndex(r), JetIndex(e))).collect()
    }

    /// All multi-indices over `n` variables with `|σ| ≤ max`, empty one first.
    pub fn all_up_to(n: usize, max: usize) -> Vec<JetIndex> {
        let mut out = vec![JetIndex::empty()];
        let mut layer = vec![JetIndex::empty()];
        for _ in 0..max {
            let mut next = Vec::new();
            for s in &layer {
                let start = s.0.last().map_or(0, |&l| l as usize);
                for i in start..n {
                    next.push(s.with(i));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

pub fn coord_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        _ => format!("x{}", i + 1),
    }
}

impl fmt::Display for JetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "u");
        }
        let names: Vec<String> = self.0.iter().map(|&i| coord_name(i as usize)).collect();
        if self.0.iter().all(|&i| i < 3) {
            write!(f, "u_{}", names.concat())
        } else {
            write!(f, "u_{{{}}}", names.join(","))
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum JetVar {
    X(u8),
    U(JetIndex),
    /// Nonlocal potential with `D_i s^i = L`.
    S(u8),
    L,
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetVar::X(i) => write!(f, "{}", coord_name(*i as usize)),
            JetVar::U(s) => write!(f, "{s}"),
            JetVar::S(i) => write!(f, "s^{}", coord_name(*i as usize)),
            JetVar::L => write!(f, "L"),
        }
    }
}

pub type JetPoly<C> = MPoly<JetVar, C>;

/// `P / L^m` in canonical form: `deg_L P ≤ 1` and `m` minimal.
#[derive(Clone, PartialEq, Debug)]
pub struct JetExpr<C: JetCoeff> {
    n: usize,
    num: JetPoly<C>,
    lpow: u32,
}

/// Polynomial for a jet coordinate, absorbing first-order coordinates
/// into the coefficient ring when it carries them.
pub(crate) fn var_poly<C: JetCoeff>(n: usize, v: JetVar) -> JetPoly<C> {
    if let JetVar::U(s) = &v {
        if s.order() == 1 {
            if let Some(c) = C::first_order(n, s.0[0] as usize) {
                return MPoly::constant(c);
            }
        }
    }
    MPoly::var(v)
}

fn first_poly<C: JetCoeff>(n: usize, j: usize) -> JetPoly<C> {
    var_poly(n, JetVar::U(JetIndex::single(j)))
}

/// `L² = 1 + Σ u_j²`.
pub(crate) fn l_squared<C: JetCoeff>(n: usize) -> JetPoly<C> {
    (0..n).fold(MPoly::one(), |acc, j| {
        let u = first_poly::<C>(n, j);
        acc.add(&u.mul(&u))
    })
}

fn ratc<C: JetCoeff>(k: i64) -> C {
    C::from_rational(BigRational::from_integer(k.into()))
}

impl<C: JetCoeff> JetExpr<C> {
    pub fn from_parts(n: usize, num: JetPoly<C>, lpow: u32) -> Self {
        let mut e = Self { n, num, lpow };
        e.normalize();
        e
    }

    pub fn zero(n: usize) -> Self {
        Self { n, num: MPoly::zero(), lpow: 0 }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::from_parts(n, MPoly::constant(c), 0)
    }

    pub fn rational(n: usize, r: BigRational) -> Self {
        Self::constant(n, C::from_rational(r))
    }

    pub fn int(n: usize, k: i64) -> Self {
        Self::constant(n, ratc(k))
    }

    pub fn one(n: usize) -> Self {
        Self::int(n, 1)
    }

    pub fn var(n: usize, v: JetVar) -> Self {
        Self::from_parts(n, var_poly(n, v), 0)
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::var(n, JetVar::X(i as u8))
    }

    pub fn u(n: usize, s: JetIndex) -> Self {
        Self::var(n, JetVar::U(s))
    }

    /// `u_{1_i}`.
    pub fn du(n: usize, i: usize) -> Self {
        Self::u(n, JetIndex::single(i))
    }

    pub fn s(n: usize, i: usize) -> Self {
        Self::var(n, JetVar::S(i as u8))
    }

    pub fn l(n: usize) -> Self {
        Self::var(n, JetVar::L)
    }

    /// `L^{-m}`.
    pub fn l_inv_pow(n: usize, m: u32) -> Self {
        Self::from_parts(n, MPoly::one(), m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn numerator(&self) -> &JetPoly<C> {
        &self.num
    }

    pub fn l_power(&self) -> u32 {
        self.lpow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when no `s^i` occurs.
    pub fn is_local(&self) -> bool {
        !self.num.variables().iter().any(|v| matches!(v, JetVar::S(_)))
    }

    /// Highest `|σ|` among the `u_σ` present, counting first-order
    /// coordinates hidden in `L` or in the coefficients.
    pub fn order(&self) -> usize {
        let explicit = self
            .num
            .variables()
            .iter()
            .filter_map(|v| if let JetVar::U(s) = v { Some(s.order()) } else { None })
            .max()
            .unwrap_or(0);
        let hidden = self.lpow > 0
            || self.num.degree_in(&JetVar::L) > 0
            || (C::first_order(self.n, 0).is_some() && self.num.terms().any(|(_, c)| {
                (0..self.n).any(|j| !c.partial_first(j).is_zero())
            }));
        explicit.max(usize::from(hidden))
    }

    fn normalize(&mut self) {
        let w = l_squared::<C>(self.n);
        if self.num.degree_in(&JetVar::L) > 1 {
            let mut out = MPoly::zero();
            for (e, part) in self.num.split_by(&JetVar::L) {
                let mut t = part.mul(&w.pow(e / 2));
                if e % 2 == 1 {
                    t = t.mul(&MPoly::var(JetVar::L));
                }
                out = out.add(&t);
            }
            self.num = out;
        }
        while self.lpow > 0 && !self.num.is_zero() {
            let parts = self.num.split_by(&JetVar::L);
            let a = parts.get(&0).cloned().unwrap_or_default();
            let b = parts.get(&1).cloned().unwrap_or_default();
            let a_over_w = if a.is_zero() { Some(a) } else { a.div_exact(&w) };
            match a_over_w {
                Some(q) => {
                    self.num = b.add(&q.mul(&MPoly::var(JetVar::L)));
                    self.lpow -= 1;
                }
                None => break,
            }
        }
        if self.num.is_zero() {
            self.lpow = 0;
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.n, o.n, "jet expressions over different dimensions");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let m = self.lpow.max(o.lpow);
        let lift = |e: &Self| e.num.mul(&MPoly::var(JetVar::L).pow(m - e.lpow));
        Self::from_parts(self.n, lift(self).add(&lift(o)), m)
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, num: self.num.neg(), lpow: self.lpow }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        Self::from_parts(self.n, self.num.mul(&o.num), self.lpow + o.lpow)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_parts(self.n, self.num.scale(c), self.lpow)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&C::from_rational(r.clone()))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&ratc(k))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Exact quotient by a polynomial that may not involve `L`.
    pub fn div_poly(&self, d: &JetPoly<C>) -> Option<Self> {
        Some(Self::from_parts(self.n, self.num.div_exact(d)?, self.lpow))
    }

    /// `∂/∂u_σ`, including the dependence through `L` and the coefficients.
    pub fn partial_u(&self, s: &JetIndex) -> Self {
        let n = self.n;
        let v = JetVar::U(s.clone());
        let mut d0 = self.num.partial(&v);
        if s.order() != 1 {
            return Self::from_parts(n, d0, self.lpow);
        }
        let j = s.0[0] as usize;
        if C::first_order(n, j).is_some() {
            d0 = d0.add(&self.num.map_coeffs(|c| c.partial_first(j)));
        }
        // (∂_L P / L^m − m P / L^{m+1}) · u_j / L
        let b = self.num.partial(&JetVar::L);
        let m = self.lpow;
        let uj = first_poly::<C>(n, j);
        let chain = MPoly::var(JetVar::L)
            .mul(&b)
            .sub(&self.num.scale(&ratc(m as i64)))
            .mul(&uj);
        Self::from_parts(n, d0, m).add(&Self::from_parts(n, chain, m + 2))
    }

    /// Replaces coordinates by numbers; `L` must be supplied by `value` too.
    pub fn eval(&self, value: impl Fn(&JetVar) -> f64) -> Complex64 {
        let first: Vec<f64> = (0..self.n).map(|j| value(&JetVar::U(JetIndex::single(j)))).collect();
        let num = self.num.eval_with(|c| c.eval(&first), |v| Complex64::new(value(v), 0.0));
        num / value(&JetVar::L).powi(self.lpow as i32)
    }
}

impl<C: JetCoeff> fmt::Display for JetExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.num.terms().map(|(m, c)| mono_text(m, c)).collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        match self.lpow {
            0 => write!(f, "{body}"),
            1 => write!(f, "({body})/L"),
            m => write!(f, "({body})/L^{m}"),
        }
    }
}

fn mono_text<C: JetCoeff>(m: &Monomial<JetVar>, c: &C) -> String {
    let mut parts = Vec::new();
    if !c.is_one() || m.is_empty() {
        parts.push(format!("{c}"));
    }
    for (v, e) in m {
        parts.push(if *e == 1 { format!("{v}") } else { format!("{v}^{e}") });
    }
    parts.join("*")
}

/// Total derivatives and the operators built from them, for a fixed
/// number of independent variables and a jet-order bound.
#[derive(Clone, Copy, Debug)]
pub struct JetSpace {
    pub n: usize,
    pub max_order: usize,
}

impl JetSpace {
    pub const DEFAULT_MAX_ORDER: usize = 4;

    pub fn new(n: usize) -> Self {
        Self { n, max_order: Self::DEFAULT_MAX_ORDER }
    }

    pub fn with_max_order(n: usize, max_order: usize) -> Self {
        Self { n, max_order }
    }

    fn shift(&self, s: &JetIndex, i: usize) -> Result<JetIndex, JetError> {
        let t = s.with(i);
        if t.order() > self.max_order {
            return Err(JetError::OrderOverflow { order: t.order(), max: self.max_order });
        }
        Ok(t)
    }

    /// `D_i` of a single coordinate, `L` excluded.
    fn d_var<C: JetCoeff>(&self, v: &JetVar, i: usize) -> Result<JetPoly<C>, JetError> {
        Ok(match v {
            JetVar::X(j) => {
                if *j as usize == i {
                    MPoly::one()
                } else {
                    MPoly::zero()
                }
            }
            JetVar::U(s) => var_poly(self.n, JetVar::U(self.shift(s, i)?)),
            JetVar::S(j) => {
                if *j as usize == i {
                    MPoly::var(JetVar::L)
                } else {
                    return Err(JetError::NonlocalUnderivable { potential: *j as usize, direction: i });
                }
            }
            JetVar::L => MPoly::zero(),
        })
    }

    /// `D_i` treating `L` as a constant.
    fn d_frozen<C: JetCoeff>(&self, p: &JetPoly<C>, i: usize) -> Result<JetPoly<C>, JetError> {
        let n = self.n;
        let absorbs = C::first_order(n, 0).is_some();
        let mut out = MPoly::zero();
        for (m, c) in p.terms() {
            if absorbs {
                for j in 0..n {
                    let dc = c.partial_first(j);
                    if !dc.is_zero() {
                        let second = var_poly(n, JetVar::U(self.shift(&JetIndex::single(j), i)?));
                        out = out.add(&MPoly::term(m.clone(), dc).mul(&second));
                    }
                }
            }
            for (pos, (v, e)) in m.iter().enumerate() {
                if *v == JetVar::L {
                    continue;
                }
                let dv = self.d_var::<C>(v, i)?;
                if dv.is_zero() {
                    continue;
                }
                let mut rest = m.clone();
                if *e == 1 {
                    rest.remove(pos);
                } else {
                    rest[pos].1 -= 1;
                }
                out = out.add(&MPoly::term(rest, c.times(&ratc(*e as i64))).mul(&dv));
            }
        }
        Ok(out)
    }

    /// Total derivative `D_i`.
    pub fn total_derivative<C: JetCoeff>(&self, e: &JetExpr<C>, i: usize) -> Result<JetExpr<C>, JetError> {
        let n = self.n;
        assert_eq!(e.n, n);
        let d0 = self.d_frozen(&e.num, i)?;
        let lpart = e.num.partial(&JetVar::L);
        if e.lpow == 0 && lpart.is_zero() {
            return Ok(JetExpr::from_parts(n, d0, 0));
        }
        // G_i = Σ_j u_j u_{ji}, so that D_i L = G_i / L.
        let mut g = MPoly::zero();
        for j in 0..n {
            let uji = var_poly(n, JetVar::U(self.shift(&JetIndex::single(j), i)?));
            g = g.add(&first_poly::<C>(n, j).mul(&uji));
        }
        let m = e.lpow;
        let num = l_squared::<C>(n)
            .mul(&d0)
            .add(&MPoly::var(JetVar::L).mul(&lpart).mul(&g))
            .sub(&e.num.mul(&g).scale(&ratc(m as i64)));
        Ok(JetExpr::from_parts(n, num, m + 2))
    }

    /// `D_σ = Π D_i`.
    pub fn total_derivative_multi<C: JetCoeff>(&self, e: &JetExpr<C>, s: &JetIndex) -> Result<JetExpr<C>, JetError> {
        let mut out = e.clone();
        for &i in s.entries() {
            if out.is_zero() {
                break;
            }
            out = self.total_derivative(&out, i as usize)?;
        }
        Ok(out)
    }

    /// `Σ_i D_i(f_i)`.
    pub fn divergence<C: JetCoeff>(&self, flux: &[JetExpr<C>]) -> Result<JetExpr<C>, JetError> {
        let mut acc = JetExpr::zero(self.n);
        for (i, f) in flux.iter().enumerate() {
            acc = acc.add(&self.total_derivative(f, i)?);
        }
        Ok(acc)
    }

    /// `E_u = Σ_σ (−D)_σ ∂/∂u_σ`.
    pub fn euler_operator<C: JetCoeff>(&self, density: &JetExpr<C>) -> Result<JetExpr<C>, JetError> {
        let mut acc = JetExpr::zero(self.n);
        for s in JetIndex::all_up_to(self.n, density.order()) {
            let d = density.partial_u(&s);
            if d.is_zero() {
                continue;
            }
            let t = self.total_derivative_multi(&d, &s)?;
            acc = if s.order() % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    /// Evolutionary derivation `𝔇_φ(e) = Σ_σ D_σ(φ) ∂e/∂u_σ`.
    pub fn evolutionary_apply<C: JetCoeff>(&self, phi: &JetExpr<C>, e: &JetExpr<C>) -> Result<JetExpr<C>, JetError> {
        let mut acc = JetExpr::zero(self.n);
        for s in JetIndex::all_up_to(self.n, e.order()) {
            let d = e.partial_u(&s);
            if d.is_zero() {
                continue;
            }
            acc = acc.add(&self.total_derivative_multi(phi, &s)?.mul(&d));
        }
        Ok(acc)
    }

    /// The flux `Q_{φ,i}(density)` of the coordinate Noether identity
    /// `𝔇_φ = φ·E_u + Σ_i D_i ∘ Q_{φ,i}`.
    ///
    /// The double sum over `τ` and `ρ + η = τ` runs over multisets; each
    /// term carries the weight `N(ρ)N(η)/N(τ+1_i)` with `N` the number of
    /// orderings of a multiset, which is what the sum over ordered index
    /// words reduces to.
    pub fn noether_q_apply<C: JetCoeff>(
        &self,
        phi: &JetExpr<C>,
        i: usize,
        density: &JetExpr<C>,
    ) -> Result<JetExpr<C>, JetError> {
        self.noether_q_weighted(phi, i, density, true)
    }

    pub(crate) fn noether_q_weighted<C: JetCoeff>(
        &self,
        phi: &JetExpr<C>,
        i: usize,
        density: &JetExpr<C>,
        weighted: bool,
    ) -> Result<JetExpr<C>, JetError> {
        let r = density.order();
        let mut acc = JetExpr::zero(self.n);
        if r == 0 {
            return Ok(acc);
        }
        for tau in JetIndex::all_up_to(self.n, r - 1) {
            let sigma = tau.with(i);
            let dl = density.partial_u(&sigma);
            if dl.is_zero() {
                continue;
            }
            let n_sigma = sigma.arrangements();
            for (rho, eta) in tau.splits() {
                let mut t = self
                    .total_derivative_multi(phi, &rho)?
                    .mul(&self.total_derivative_multi(&dl, &eta)?);
                if weighted {
                    let w = BigRational::new(rho.arrangements() * eta.arrangements(), n_sigma.clone());
                    t = t.scale_rational(&w);
                }
                acc = if eta.order() % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
        }
        Ok(acc)
    }

    /// `𝔇_φ(ρ) − φ·E_u(ρ) − Σ_i D_i(Q_{φ,i}(ρ))`.
    pub fn noether_identity_residual<C: JetCoeff>(&self, phi: &JetExpr<C>, density: &JetExpr<C>) -> Result<JetExpr<C>, JetError> {
        let mut r = self.evolutionary_apply(phi, density)?.sub(&phi.mul(&self.euler_operator(density)?));
        for i in 0..self.n {
            r = r.sub(&self.total_derivative(&self.noether_q_apply(phi, i, density)?, i)?);
        }
        Ok(r)
    }

    /// `{φ', φ''} = 𝔇_{φ'}(φ'') − 𝔇_{φ''}(φ')`.
    pub fn jacobi_bracket<C: JetCoeff>(&self, a: &JetExpr<C>, b: &JetExpr<C>) -> Result<JetExpr<C>, JetError> {
        Ok(self.evolutionary_apply(a, b)?.sub(&self.evolutionary_apply(b, a)?))
    }
}
