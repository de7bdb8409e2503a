//! The minimal surface equation and reduction modulo its prolongations.

use std::collections::HashMap;

use num_rational::BigRational;

use super::jet::{l_squared, var_poly, JetExpr, JetIndex, JetPoly, JetSpace, JetVar};
use super::poly::{JetCoeff, MPoly};
use super::JetError;

/// `F = Σ_i u_ii (1 + Σ_j u_j²) − Σ_{i,j} u_i u_j u_ij`, solved for the
/// last pure second derivative `u_nn`: `F = C·u_nn + R`.
#[derive(Clone, Debug)]
pub struct EquationObject<C: JetCoeff> {
    pub n: usize,
    f: JetExpr<C>,
    coefficient: JetPoly<C>,
    rest: JetPoly<C>,
}

/// `num / C^c_pow` with `C` the coefficient of `u_nn`; no coordinate
/// `u_{nn+τ}` occurs in `num`, and `c_pow` is minimal.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduced<C: JetCoeff> {
    pub num: JetExpr<C>,
    pub c_pow: u32,
}

impl<C: JetCoeff> Reduced<C> {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: JetCoeff> EquationObject<C> {
    pub fn minimal_surface(n: usize) -> Self {
        assert!(n >= 1);
        let w = l_squared::<C>(n);
        let u = |s: JetIndex| var_poly::<C>(n, JetVar::U(s));
        let du = |i: usize| u(JetIndex::single(i));
        let mut f = MPoly::zero();
        for i in 0..n {
            f = f.add(&u(JetIndex::new(vec![i as u8, i as u8])).mul(&w));
            for j in 0..n {
                f = f.sub(&du(i).mul(&du(j)).mul(&u(JetIndex::new(vec![i as u8, j as u8]))));
            }
        }
        let last = JetVar::U(JetIndex::new(vec![(n - 1) as u8; 2]));
        let parts = f.split_by(&last);
        let coefficient = parts.get(&1).cloned().unwrap_or_default();
        let rest = parts.get(&0).cloned().unwrap_or_default();
        debug_assert!(parts.keys().all(|&k| k <= 1));
        Self { n, f: JetExpr::from_parts(n, f, 0), coefficient, rest }
    }

    /// The equation's left-hand side `F`.
    pub fn f(&self) -> &JetExpr<C> {
        &self.f
    }

    /// The multi-index `nn` that reduction eliminates.
    pub fn solved_for(&self) -> JetIndex {
        JetIndex::new(vec![(self.n - 1) as u8; 2])
    }

    /// `C = 1 + Σ_{j<n} u_j²`.
    pub fn coefficient(&self) -> JetExpr<C> {
        JetExpr::from_parts(self.n, self.coefficient.clone(), 0)
    }

    /// `ℓ_F(φ) = Σ_σ ∂F/∂u_σ · D_σ(φ)`.
    pub fn linearization_apply(&self, sp: &JetSpace, phi: &JetExpr<C>) -> Result<JetExpr<C>, JetError> {
        sp.evolutionary_apply(phi, &self.f)
    }

    /// Exact quotient `e / F` when `F` divides the numerator of `e`.
    pub fn divide_by_f(&self, e: &JetExpr<C>) -> Option<JetExpr<C>> {
        e.div_poly(self.f.numerator())
    }

    fn eliminated(&self, s: &JetIndex) -> bool {
        s.count(self.n - 1) >= 2
    }

    /// Substitutes `u_nn` and all its prolongations, returning the
    /// representative `N / C^k` free of eliminated coordinates.
    pub fn reduce(&self, sp: &JetSpace, e: &JetExpr<C>) -> Result<Reduced<C>, JetError> {
        let mut memo = HashMap::new();
        self.reduce_expr(sp, e, &mut memo)
    }

    /// Reduction of a fraction `num / C^k` already carrying a power of `C`.
    pub fn reduce_reduced(&self, sp: &JetSpace, r: &Reduced<C>) -> Result<Reduced<C>, JetError> {
        let mut out = self.reduce(sp, &r.num)?;
        out.c_pow += r.c_pow;
        Ok(self.cancel(out))
    }

    pub fn reduced_mul(&self, a: &Reduced<C>, b: &Reduced<C>) -> Reduced<C> {
        self.cancel(Reduced { num: a.num.mul(&b.num), c_pow: a.c_pow + b.c_pow })
    }

    pub fn reduced_add(&self, a: &Reduced<C>, b: &Reduced<C>) -> Reduced<C> {
        let k = a.c_pow.max(b.c_pow);
        let c = self.coefficient();
        let num = a.num.mul(&c.pow(k - a.c_pow)).add(&b.num.mul(&c.pow(k - b.c_pow)));
        self.cancel(Reduced { num, c_pow: k })
    }

    /// True when the two representatives agree.
    pub fn reduced_eq(&self, a: &Reduced<C>, b: &Reduced<C>) -> bool {
        self.reduced_add(a, &Reduced { num: b.num.neg(), c_pow: b.c_pow }).is_zero()
    }

    fn cancel(&self, mut r: Reduced<C>) -> Reduced<C> {
        if r.num.is_zero() {
            r.c_pow = 0;
        }
        while r.c_pow > 0 {
            match r.num.div_poly(&self.coefficient) {
                Some(q) => {
                    r.num = q;
                    r.c_pow -= 1;
                }
                None => break,
            }
        }
        r
    }

    fn reduce_expr(
        &self,
        sp: &JetSpace,
        e: &JetExpr<C>,
        memo: &mut HashMap<JetIndex, Reduced<C>>,
    ) -> Result<Reduced<C>, JetError> {
        let n = self.n;
        for v in e.numerator().variables() {
            if let JetVar::U(s) = &v {
                if s.order() > sp.max_order {
                    return Err(JetError::OrderOverflow { order: s.order(), max: sp.max_order });
                }
            }
        }
        let mut acc = Reduced { num: JetExpr::zero(n), c_pow: 0 };
        for (m, c) in e.numerator().terms() {
            let mut t = Reduced { num: JetExpr::from_parts(n, MPoly::constant(c.clone()), 0), c_pow: 0 };
            for (v, pw) in m {
                let factor = match v {
                    JetVar::U(s) if self.eliminated(s) => {
                        let r = self.reduce_var(sp, s, memo)?;
                        Reduced { num: r.num.pow(*pw), c_pow: r.c_pow * pw }
                    }
                    _ => Reduced { num: JetExpr::from_parts(n, MPoly::var(v.clone()).pow(*pw), 0), c_pow: 0 },
                };
                t = Reduced { num: t.num.mul(&factor.num), c_pow: t.c_pow + factor.c_pow };
            }
            acc = self.reduced_add(&acc, &t);
        }
        acc.num = acc.num.mul(&JetExpr::l_inv_pow(n, e.l_power()));
        Ok(self.cancel(acc))
    }

    fn reduce_var(
        &self,
        sp: &JetSpace,
        s: &JetIndex,
        memo: &mut HashMap<JetIndex, Reduced<C>>,
    ) -> Result<Reduced<C>, JetError> {
        if let Some(r) = memo.get(s) {
            return Ok(r.clone());
        }
        if s.order() > sp.max_order {
            return Err(JetError::OrderOverflow { order: s.order(), max: sp.max_order });
        }
        let last = self.n - 1;
        let r = if s.order() == 2 {
            Reduced { num: JetExpr::from_parts(self.n, self.rest.neg(), 0), c_pow: 1 }
        } else {
            // Differentiate along a non-eliminated direction first so the
            // derivative introduces no new eliminated coordinates.
            let j = s.entries().iter().map(|&j| j as usize).find(|&j| j != last).unwrap_or(last);
            let prev = s.without(j).expect("index present");
            let base = self.reduce_var(sp, &prev, memo)?;
            let d = self.d_reduced(sp, &base, j)?;
            self.reduce_reduced(sp, &d)?
        };
        memo.insert(s.clone(), r.clone());
        Ok(r)
    }

    /// `D_j(N / C^k) = (D_j N · C − k N D_j C) / C^{k+1}`.
    fn d_reduced(&self, sp: &JetSpace, r: &Reduced<C>, j: usize) -> Result<Reduced<C>, JetError> {
        let dn = sp.total_derivative(&r.num, j)?;
        if r.c_pow == 0 {
            return Ok(Reduced { num: dn, c_pow: 0 });
        }
        let c = self.coefficient();
        let dc = sp.total_derivative(&c, j)?;
        let k = BigRational::from_integer((r.c_pow as i64).into());
        let num = dn.mul(&c).sub(&r.num.mul(&dc).scale_rational(&k));
        Ok(Reduced { num, c_pow: r.c_pow + 1 })
    }
}
