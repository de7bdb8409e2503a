use crate::exprcore::{ClosedForm, GaussianRational as G, Pole, RationalFunctionPM};

use super::chain::{Branch, ChainSpec, Parity};
use super::HierarchyError;

/// Splits a head into `a (p+i)^{−m} + b (p−i)^{−m}`.
fn split_head(head: &ClosedForm, parity: Parity) -> Result<(G, G, usize), HierarchyError> {
    let r = head.as_rational_function().ok_or(HierarchyError::NotAHead)?;
    if !r.is_polynomial() && r.poly_coeffs().is_empty() {
        let m = r.max_pole_order();
        let wanted_odd = parity == Parity::Even;
        if m == 0 || (m % 2 == 1) != wanted_odd {
            return Err(HierarchyError::NotAHead);
        }
        let top = |pole: Pole| r.poles(pole).get(m - 1).cloned().unwrap_or_else(G::zero);
        let (a, b) = (top(Pole::MinusI), top(Pole::PlusI));
        let rebuilt = RationalFunctionPM::pole_monomial(a.clone(), 0, -(m as i64))
            .add(&RationalFunctionPM::pole_monomial(b.clone(), -(m as i64), 0));
        if rebuilt == r {
            return Ok((a, b, m));
        }
    }
    Err(HierarchyError::NotAHead)
}

/// Raises a level-`k` head to level `k+1`: the `(p+i)^{−m}` component is
/// multiplied by `(p+i)^{−2}`, the `(p−i)^{−m}` one by `(p−i)^{−2}`.
///
/// On the complex branches this is multiplication by a single monomial;
/// real heads are handled through their complex components.
pub fn recursion_nabla(head: &ClosedForm, parity: Parity, branch: Branch) -> Result<ClosedForm, HierarchyError> {
    let (a, b, m) = split_head(head, parity)?;
    let ok = match (parity, branch) {
        (Parity::Even, Branch::Plus) | (Parity::Odd, Branch::Minus) => b.is_zero(),
        (Parity::Even, Branch::Minus) | (Parity::Odd, Branch::Plus) => a.is_zero(),
        _ => true,
    };
    if !ok {
        return Err(HierarchyError::NotAHead);
    }
    let m = m as i64 + 2;
    Ok(ClosedForm::pole_monomial(a, 0, -m).add(&ClosedForm::pole_monomial(b, -m, 0)))
}

/// Swaps the two members of a basis at fixed parity and level.
pub fn recursion_delta(spec: ChainSpec) -> ChainSpec {
    let branch = match spec.branch {
        Branch::Re => Branch::Im,
        Branch::Im => Branch::Re,
        Branch::Plus => Branch::Minus,
        Branch::Minus => Branch::Plus,
    };
    ChainSpec { branch, ..spec }
}
