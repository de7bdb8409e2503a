use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::exprcore::{ClosedForm, GaussianRational as G, QPoly};

use super::{ContactPolynomial, HierarchyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// Complex solution with its pole at `-i` for even chains, at `+i` for odd ones.
    Plus,
    Minus,
    Re,
    Im,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSpec {
    pub parity: Parity,
    pub k: u32,
    pub branch: Branch,
}

impl ChainSpec {
    pub fn new(parity: Parity, k: u32, branch: Branch) -> Self {
        assert!(k >= 1, "chain level must be positive");
        Self { parity, k, branch }
    }

    /// Degree in `u_y` of the generated symmetry.
    pub fn degree(&self) -> u32 {
        match self.parity {
            Parity::Even => 2 * self.k,
            Parity::Odd => 2 * self.k + 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
            Branch::Re => "re",
            Branch::Im => "im",
        })
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/k={}/{}", self.parity, self.k, self.branch)
    }
}

impl FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(format!("unknown parity {s:?}")),
        }
    }
}

impl FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" => Ok(Branch::Plus),
            "minus" => Ok(Branch::Minus),
            "re" => Ok(Branch::Re),
            "im" => Ok(Branch::Im),
            _ => Err(format!("unknown branch {s:?}")),
        }
    }
}

/// Exponent `m` of the level-`ℓ` monomial solutions.
fn level_exponent(parity: Parity, l: u32) -> i64 {
    match parity {
        Parity::Even => 2 * l as i64 - 1,
        Parity::Odd => 2 * l as i64,
    }
}

/// The complex pair `(plus, minus)` solving the level-`ℓ` homogeneous equation.
pub fn complex_pair(parity: Parity, l: u32) -> (ClosedForm, ClosedForm) {
    let m = level_exponent(parity, l);
    let at_minus_i = ClosedForm::pole_monomial(G::one(), 0, -m);
    let at_plus_i = ClosedForm::pole_monomial(G::one(), -m, 0);
    match parity {
        Parity::Even => (at_minus_i, at_plus_i),
        Parity::Odd => (at_plus_i, at_minus_i),
    }
}

/// `re = (plus + minus)/2`, `im = (plus − minus)/(2i)`.
pub fn homogeneous_basis(spec: ChainSpec) -> ClosedForm {
    level_basis(spec.parity, spec.k, spec.branch)
}

pub(crate) fn level_basis(parity: Parity, l: u32, branch: Branch) -> ClosedForm {
    let (plus, minus) = complex_pair(parity, l);
    let half = BigRational::new(1.into(), 2.into());
    match branch {
        Branch::Plus => plus,
        Branch::Minus => minus,
        Branch::Re => plus.add(&minus).scale_rational(&half),
        Branch::Im => plus.sub(&minus).scale(&G::new(BigRational::from_integer(0.into()), -half)),
    }
}

/// `(c₁, c₀)` of `(1+p²)f'' + c₁ p f' + c₀ f` at level `ℓ`.
pub fn ode_coefficients(parity: Parity, l: u32) -> (i64, i64) {
    let l = l as i64;
    match parity {
        Parity::Even => (4 * l, 2 * l * (2 * l - 1)),
        Parity::Odd => (2 * (2 * l + 1), 2 * l * (2 * l + 1)),
    }
}

/// Right-hand-side factor `K` in `… = −K f_{ℓ+1}`.
pub fn coupling(parity: Parity, l: u32) -> i64 {
    let l = l as i64;
    match parity {
        Parity::Even => (2 * l + 2) * (2 * l + 1),
        Parity::Odd => (2 * l + 3) * (2 * l + 2),
    }
}

pub(crate) fn ode_operator(f: &ClosedForm, c1: i64, c0: i64) -> ClosedForm {
    let d1 = f.differentiate();
    let d2 = d1.differentiate();
    ClosedForm::one_plus_p2_pow(1)
        .mul(&d2)
        .add(&ClosedForm::p().mul(&d1).scale(&G::from_int(c1)))
        .add(&f.scale(&G::from_int(c0)))
}

/// Left-hand side of the level-`k` homogeneous equation at `f`.
pub fn homogeneous_residual(f: &ClosedForm, parity: Parity, k: u32) -> ClosedForm {
    let (c1, c0) = ode_coefficients(parity, k);
    ode_operator(f, c1, c0)
}

/// Same, with the first-derivative coefficient `2(2k+1)k` for odd chains.
pub fn homogeneous_residual_alt_odd(f: &ClosedForm, k: u32) -> ClosedForm {
    let k = k as i64;
    ode_operator(f, 2 * (2 * k + 1) * k, 2 * k * (2 * k + 1))
}

/// `W = y₁y₂' − y₁'y₂` of the level-`ℓ` complex pair:
/// `−2im(1+p²)^{−m−1}` for even chains, `+2im(1+p²)^{−m−1}` for odd ones.
pub fn wronskian(parity: Parity, l: u32) -> ClosedForm {
    let m = level_exponent(parity, l);
    let sign = match parity {
        Parity::Even => -1,
        Parity::Odd => 1,
    };
    ClosedForm::pole_monomial(G::new(BigRational::from_integer(0.into()), BigRational::from_integer((2 * m * sign).into())), -m - 1, -m - 1)
}

/// Particular solution at level `ℓ ≥ 1` given `f_{ℓ+1}`, by variation of
/// parameters with zero integration constants:
/// `f_ℓ = K [y₁ ∫ y₂ f_{ℓ+1}/((1+p²)W) − y₂ ∫ y₁ f_{ℓ+1}/((1+p²)W)]`.
pub fn solve_intermediate(parity: Parity, l: u32, f_next: &ClosedForm) -> Result<ClosedForm, HierarchyError> {
    assert!(l >= 1);
    let (y1, y2) = complex_pair(parity, l);
    let m = level_exponent(parity, l);
    let sign = match parity {
        Parity::Even => -1,
        Parity::Odd => 1,
    };
    // 1/((1+p²)W) = (1+p²)^m / (±2im)
    let c = G::new(BigRational::from_integer(0.into()), BigRational::from_integer((2 * m * sign).into()))
        .inv()
        .expect("nonzero");
    let weight = ClosedForm::pole_monomial(c, m, m).mul(f_next);
    let esc = |e| HierarchyError::from_expr(e, l);
    let i1 = y2.mul(&weight).antiderivative().map_err(esc)?;
    let i2 = y1.mul(&weight).antiderivative().map_err(esc)?;
    Ok(y1.mul(&i1).sub(&y2.mul(&i2)).scale(&G::from_int(coupling(parity, l))))
}

/// Level-0 coefficient from level 1, with the free constants set to zero:
/// `f₀ = −2 ∫∫ f₁/(1+p²)` or `g₀ = −6 ∫ (1+p²)^{-1} ∫ g₁`.
pub fn terminal_quadrature(parity: Parity, f1: &ClosedForm) -> Result<ClosedForm, HierarchyError> {
    let esc = |e| HierarchyError::from_expr(e, 0);
    let inv = ClosedForm::one_plus_p2_pow(-1);
    match parity {
        Parity::Even => {
            let inner = f1.mul(&inv).antiderivative().map_err(esc)?;
            Ok(inner.antiderivative().map_err(esc)?.scale(&G::from_int(-2)))
        }
        Parity::Odd => {
            let inner = f1.antiderivative().map_err(esc)?;
            Ok(inner.mul(&inv).antiderivative().map_err(esc)?.scale(&G::from_int(-6)))
        }
    }
}

/// Residual of the terminal equation: `(1+p²)f₀'' + 2f₁` or
/// `(1+p²)g₀'' + 2p g₀' + 6g₁`.
pub fn terminal_residual(parity: Parity, f0: &ClosedForm, f1: &ClosedForm) -> ClosedForm {
    match parity {
        Parity::Even => ode_operator(f0, 0, 0).add(&f1.scale(&G::from_int(2))),
        Parity::Odd => ode_operator(f0, 2, 0).add(&f1.scale(&G::from_int(6))),
    }
}

/// The two solutions of the homogeneous terminal equation, i.e. the
/// coefficients of the free quadrature constants: `(p, 1)` for even
/// chains and `(1, arctan p)` for odd ones, each times `u_y^0` or `u_y`.
pub fn terminal_homogeneous(parity: Parity) -> [ContactPolynomial; 2] {
    match parity {
        Parity::Even => [
            ContactPolynomial::new(QPoly::p()),
            ContactPolynomial::new(QPoly::one()),
        ],
        Parity::Odd => [
            ContactPolynomial::new(QPoly::q()),
            ContactPolynomial::new(QPoly::from_closed_form(ClosedForm::arctan()).mul(&QPoly::q())),
        ],
    }
}

/// The ladder `f_k, f_{k−1}, …, f₀`, top level first.
pub fn generate_ladder(spec: ChainSpec) -> Result<Vec<ClosedForm>, HierarchyError> {
    let mut ladder = vec![homogeneous_basis(spec)];
    for l in (1..spec.k).rev() {
        let next = solve_intermediate(spec.parity, l, ladder.last().expect("nonempty"))?;
        ladder.push(next);
    }
    ladder.push(terminal_quadrature(spec.parity, ladder.last().expect("nonempty"))?);
    Ok(ladder)
}

/// `Σ_ℓ f_ℓ u_y^{2ℓ}` or `Σ_ℓ g_ℓ u_y^{2ℓ+1}`.
pub fn generate_symmetry(spec: ChainSpec) -> Result<ContactPolynomial, HierarchyError> {
    let ladder = generate_ladder(spec)?;
    let shift = match spec.parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let mut poly = QPoly::zero();
    for (idx, c) in ladder.into_iter().enumerate() {
        let l = spec.k - idx as u32;
        poly = poly.add(&QPoly::monomial(c, 2 * l + shift));
    }
    Ok(ContactPolynomial::new(poly))
}
