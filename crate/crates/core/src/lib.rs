//! Phase-space simulation of elementary two-dimensional quantum systems
//! (harmonic oscillator, free particle, gravitational quantum well) coupled
//! to a uniform magnetic-like field.
//!
//! The crate evolves Gaussian Wigner functions along the exact classical
//! flows of the Weyl-transformed Hamiltonians, evaluates the stationary
//! Wigner functions of each system, and quantifies decoherence through the
//! Wigner-overlap fidelity and the phase-space Shannon entropy.
//!
//! Sign convention: the angular coupling is written `ω (p₁ r₂ − p₂ r₁)`,
//! i.e. `ε₁₂ = +1 = −ε₂₁`, everywhere in the crate.

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod measures;
pub mod model;
pub mod ncmap;
pub mod quadrature;
pub mod specfun;
pub mod wigner;

pub use error::{Error, Result};
pub use model::{Frequencies, PhasePoint, SystemKind, SystemParams, TimeGrid};
