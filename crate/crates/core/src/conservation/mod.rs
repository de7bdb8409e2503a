//! Point symmetries of the area functional, their conserved currents, and
//! the planarity argument for surfaces invariant under contact symmetries.

mod surface;

pub use surface::{discriminant_identity_holds, invariant_surface_check, InvariantSurfaceReport};

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::exprcore::QPoly;
use crate::hierarchy::ContactPolynomial;
use crate::jetcalc::{EquationObject, JetError, JetExpr, JetIndex, JetSpace};

type E = JetExpr<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConservationError {
    #[error("{0} yields no conservation law")]
    NotConservative(SymmetryId),
    #[error(transparent)]
    Jet(#[from] JetError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryId {
    Shift,
    Translation(usize),
    /// `x^j u_i − x^i u_j`, `i < j`.
    Rotation(usize, usize),
    /// `x^i + u u_i`.
    XRotation(usize),
    Dilatation,
}

impl fmt::Display for SymmetryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::jetcalc::coord_name as c;
        match self {
            SymmetryId::Shift => write!(f, "shift"),
            SymmetryId::Translation(i) => write!(f, "translation({})", c(*i)),
            SymmetryId::Rotation(i, j) => write!(f, "rotation({},{})", c(*i), c(*j)),
            SymmetryId::XRotation(i) => write!(f, "xrotation({})", c(*i)),
            SymmetryId::Dilatation => write!(f, "dilatation"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `𝔇_φ(L)` is a total divergence.
    Noether,
    /// `𝔇_φ(L) = c·L` plus a total divergence.
    Variational,
    None,
}

#[derive(Clone, Debug)]
pub struct CatalogSymmetry {
    pub id: SymmetryId,
    pub n: usize,
    pub section: E,
    /// Flux with `𝔇_φ(L) = Σ_i D_i(μ_i) + remainder`.
    pub mu: Vec<E>,
    pub remainder: E,
    pub classification: Classification,
}

pub fn catalog(n: usize) -> Vec<CatalogSymmetry> {
    assert!(n >= 1);
    let l = E::l(n);
    let u = E::u(n, JetIndex::empty());
    let x = |i| E::x(n, i);
    let du = |i| E::du(n, i);
    let zeros = || vec![E::zero(n); n];
    let mut out = vec![CatalogSymmetry {
        id: SymmetryId::Shift,
        n,
        section: E::one(n),
        mu: zeros(),
        remainder: E::zero(n),
        classification: Classification::Noether,
    }];
    for i in 0..n {
        let mut mu = zeros();
        mu[i] = l.clone();
        out.push(CatalogSymmetry {
            id: SymmetryId::Translation(i),
            n,
            section: du(i),
            mu,
            remainder: E::zero(n),
            classification: Classification::Noether,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut mu = zeros();
            mu[i] = x(j).mul(&l);
            mu[j] = x(i).mul(&l).neg();
            out.push(CatalogSymmetry {
                id: SymmetryId::Rotation(i, j),
                n,
                section: x(j).mul(&du(i)).sub(&x(i).mul(&du(j))),
                mu,
                remainder: E::zero(n),
                classification: Classification::Noether,
            });
        }
    }
    for i in 0..n {
        let mut mu = zeros();
        mu[i] = u.mul(&l);
        out.push(CatalogSymmetry {
            id: SymmetryId::XRotation(i),
            n,
            section: x(i).add(&u.mul(&du(i))),
            mu,
            remainder: E::zero(n),
            classification: Classification::Noether,
        });
    }
    let euler_field = (0..n).fold(E::zero(n), |acc, j| acc.add(&x(j).mul(&du(j))));
    out.push(CatalogSymmetry {
        id: SymmetryId::Dilatation,
        n,
        section: u.sub(&euler_field),
        mu: (0..n).map(|j| x(j).mul(&l).neg()).collect(),
        remainder: l.scale_int(n as i64),
        classification: Classification::Variational,
    });
    out
}

#[derive(Clone, Debug)]
pub struct SymmetryCheck {
    pub id: SymmetryId,
    /// `ℓ_F(φ)` reduced modulo the equation is zero.
    pub is_symmetry: bool,
    /// `𝔇_φ(L) − Σ D_i(μ_i) − remainder`, off the equation.
    pub flux_residual: E,
}

pub fn check_symmetry(sym: &CatalogSymmetry) -> Result<SymmetryCheck, JetError> {
    let sp = JetSpace::new(sym.n);
    let eq = EquationObject::<BigRational>::minimal_surface(sym.n);
    let lin = eq.linearization_apply(&sp, &sym.section)?;
    let l = E::l(sym.n);
    let flux_residual = sp
        .evolutionary_apply(&sym.section, &l)?
        .sub(&sp.divergence(&sym.mu)?)
        .sub(&sym.remainder);
    Ok(SymmetryCheck { id: sym.id, is_symmetry: eq.reduce(&sp, &lin)?.is_zero(), flux_residual })
}

#[derive(Clone, Debug)]
pub struct ConservedCurrent {
    pub n: usize,
    pub generator: SymmetryId,
    pub components: Vec<E>,
    pub local: bool,
}

/// Noether symmetries: `flux_i = Q_{φ,i}(L) − μ_i`, with divergence
/// `−φ·E_u(L)`. The dilatation: `flux_i = s^i + μ_i − Q_{φ,i}(L)` with
/// `D_i s^i = L`, whose divergence is `φ·E_u(L)`.
pub fn build_current(sym: &CatalogSymmetry) -> Result<ConservedCurrent, ConservationError> {
    let sp = JetSpace::new(sym.n);
    let l = E::l(sym.n);
    let mut components = Vec::with_capacity(sym.n);
    for i in 0..sym.n {
        let q = sp.noether_q_apply(&sym.section, i, &l)?;
        components.push(match sym.classification {
            Classification::Noether => q.sub(&sym.mu[i]),
            Classification::Variational => E::s(sym.n, i).add(&sym.mu[i]).sub(&q),
            Classification::None => return Err(ConservationError::NotConservative(sym.id)),
        });
    }
    let local = components.iter().all(E::is_local);
    Ok(ConservedCurrent { n: sym.n, generator: sym.id, components, local })
}

#[derive(Clone, Debug)]
pub struct CurrentVerification {
    /// Total divergence off the equation.
    pub divergence: E,
    /// `χ` with `divergence = χ·F`, when `F` divides exactly.
    pub characteristic: Option<E>,
    pub reduced_zero: bool,
}

pub fn verify_current(c: &ConservedCurrent) -> Result<CurrentVerification, JetError> {
    let sp = JetSpace::new(c.n);
    let eq = EquationObject::<BigRational>::minimal_surface(c.n);
    let divergence = sp.divergence(&c.components)?;
    let characteristic = eq.divide_by_f(&divergence);
    let reduced_zero = match &characteristic {
        Some(_) => true,
        None => eq.reduce(&sp, &divergence)?.is_zero(),
    };
    Ok(CurrentVerification { divergence, characteristic, reduced_zero })
}

/// `E_u(𝔇_φ(L))` for a section of `u_x, u_y`; zero exactly when
/// `𝔇_φ(L)` is a total divergence.
pub fn noether_exactness_probe(phi: &ContactPolynomial) -> Result<JetExpr<QPoly>, JetError> {
    let sp = JetSpace::new(2);
    let l = JetExpr::<QPoly>::l(2);
    sp.euler_operator(&sp.evolutionary_apply(&phi.to_jet(), &l)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    pub n: usize,
    pub shift: usize,
    pub translations: usize,
    pub rotations: usize,
    pub xrotations: usize,
    pub dilatation: usize,
    /// Catalog members other than the dilatation.
    pub killing_members: usize,
    /// `(n+1)(n+2)/2`.
    pub killing_dimension: usize,
}

pub fn dimension_table(n: usize) -> DimensionTable {
    let cat = catalog(n);
    let count = |f: fn(&SymmetryId) -> bool| cat.iter().filter(|s| f(&s.id)).count();
    let t = DimensionTable {
        n,
        shift: count(|id| matches!(id, SymmetryId::Shift)),
        translations: count(|id| matches!(id, SymmetryId::Translation(_))),
        rotations: count(|id| matches!(id, SymmetryId::Rotation(..))),
        xrotations: count(|id| matches!(id, SymmetryId::XRotation(_))),
        dilatation: count(|id| matches!(id, SymmetryId::Dilatation)),
        killing_members: 0,
        killing_dimension: (n + 1) * (n + 2) / 2,
    };
    DimensionTable { killing_members: t.shift + t.translations + t.rotations + t.xrotations, ..t }
}
