//! Closed-form Wigner functions of the translated Gaussian and of the
//! stationary states of each system.

mod gaussian;
mod gqw;
mod ho;
mod landau;

pub use gaussian::GaussianWigner;
pub use gqw::{
    gqw_energy, normalize_gqw, stargen_residual, stargen_residual_at, GqwNormalization, GqwState, SectorGrid,
};
pub use ho::{ho_energy, StationaryHoState};
pub use landau::{landau_energy, LandauState};

use crate::dynamics::Flow;
use crate::error::Result;
use crate::model::PhasePoint;

/// A real phase-space quasi-density.
pub trait WignerFunction {
    fn value(&self, pt: &PhasePoint) -> Result<f64>;

    /// Short human-readable name used in error reports.
    fn label(&self) -> String;
}

impl<W: WignerFunction + ?Sized> WignerFunction for &W {
    fn value(&self, pt: &PhasePoint) -> Result<f64> {
        (**self).value(pt)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

/// Any of the closed-form states.
#[derive(Debug, Clone, PartialEq)]
pub enum WignerState {
    Gaussian(GaussianWigner),
    Ho(StationaryHoState),
    Landau(LandauState),
    Gqw(GqwState),
}

impl WignerFunction for WignerState {
    fn value(&self, pt: &PhasePoint) -> Result<f64> {
        match self {
            WignerState::Gaussian(w) => w.value(pt),
            WignerState::Ho(w) => w.value(pt),
            WignerState::Landau(w) => w.value(pt),
            WignerState::Gqw(w) => w.value(pt),
        }
    }

    fn label(&self) -> String {
        match self {
            WignerState::Gaussian(w) => w.label(),
            WignerState::Ho(w) => w.label(),
            WignerState::Landau(w) => w.label(),
            WignerState::Gqw(w) => w.label(),
        }
    }
}

/// A state carried along a Hamiltonian flow by Liouville transport,
/// `W_t(z) = W_0(Φ_{−t}(z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transported<W> {
    pub initial: W,
    pub flow: Flow,
    pub time: f64,
}

impl<W: WignerFunction> WignerFunction for Transported<W> {
    fn value(&self, pt: &PhasePoint) -> Result<f64> {
        self.initial.value(&self.flow.evolve(pt, -self.time))
    }

    fn label(&self) -> String {
        format!("{} at t = {}", self.initial.label(), self.time)
    }
}

/// Which two phase-space coordinates a 2D factor depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorAxes {
    /// (x, p_x) and (y, p_y).
    Cartesian,
    /// (x, p_y) and (y, p_x), the guiding-centre split of the Landau form.
    Crossed,
}

impl SectorAxes {
    /// Phase-point indices (x, y, p_x, p_y ordering) of the two sectors.
    pub fn indices(self) -> [[usize; 2]; 2] {
        match self {
            SectorAxes::Cartesian => [[0, 2], [1, 3]],
            SectorAxes::Crossed => [[0, 3], [1, 2]],
        }
    }
}

/// `prefactor · exp(−(a q² + b p² + 2c q p))` on one 2D sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSector {
    pub prefactor: f64,
    pub qq: f64,
    pub pp: f64,
    pub qp: f64,
}

impl GaussianSector {
    pub fn exponent(&self, q: f64, p: f64) -> f64 {
        self.qq * q * q + self.pp * p * p + 2.0 * self.qp * q * p
    }

    pub fn value(&self, q: f64, p: f64) -> f64 {
        self.prefactor * (-self.exponent(q, p)).exp()
    }

    /// `v ln v` without forming `ln` of an underflowed value.
    pub fn value_log_value(&self, q: f64, p: f64) -> f64 {
        let e = self.exponent(q, p);
        self.prefactor * (-e).exp() * (self.prefactor.ln() - e)
    }

    /// Integral over the whole plane, `prefactor · π / √(ab − c²)`.
    pub fn total(&self) -> f64 {
        self.prefactor * std::f64::consts::PI / (self.qq * self.pp - self.qp * self.qp).sqrt()
    }
}

/// A ground state written as a product of two Gaussian sectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableGround {
    pub axes: SectorAxes,
    pub sectors: [GaussianSector; 2],
}

impl SeparableGround {
    pub fn value(&self, pt: &PhasePoint) -> f64 {
        let z = pt.to_array();
        let [a, b] = self.axes.indices();
        self.sectors[0].value(z[a[0]], z[a[1]]) * self.sectors[1].value(z[b[0]], z[b[1]])
    }
}
