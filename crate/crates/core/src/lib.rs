//! Exact symmetry and conservation-law machinery for the minimal surface
//! equation.
//!
//! * [`exprcore`]: closed forms in `p = u_x` over the Gaussian rationals.
//! * [`hierarchy`]: the infinite chains of contact symmetries `φ(u_x, u_y)`.
//! * [`jetcalc`]: total derivatives, Euler operator, Noether identity and
//!   reduction modulo the equation on a finite jet space.
//! * [`conservation`]: point-symmetry catalog and conserved currents.
//! * [`numcheck`]: floating-point shadow checks of the symbolic results.

pub mod conservation;
pub mod exprcore;
pub mod hierarchy;
pub mod jetcalc;
pub mod numcheck;
