//! Special functions needed by the Wigner states and the quadrature rules.

mod airy;
mod hermite;
mod laguerre;

pub use airy::{airy_ai, airy_zero};
pub use hermite::{gauss_hermite, GaussHermiteRule, MAX_HERMITE_ORDER};
pub use laguerre::laguerre;
