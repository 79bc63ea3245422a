use std::f64::consts::PI;

use super::WignerFunction;
use crate::error::{Error, Result};
use crate::model::{PhasePoint, SystemParams};
use crate::quadrature::{try_integrate, BoxAxis, QuadratureScheme};
use crate::specfun::{airy_ai, airy_zero};

/// Largest value of Ai on the real line, attained near −1.0188.
const AI_MAX: f64 = 0.535_656_656_015_700_4;

/// How the Airy factor's amplitude is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GqwNormalization {
    /// `A_n` makes ∫|W_y| = 1 on the declared domain.
    #[default]
    Absolute,
    /// `A_n` makes the signed ∫W_y = 1.
    Signed,
}

/// Midpoint resolution of the (y, p_y) sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorGrid {
    pub y_nodes: usize,
    pub p_nodes: usize,
}

impl Default for SectorGrid {
    fn default() -> Self {
        SectorGrid {
            y_nodes: 400,
            p_nodes: 400,
        }
    }
}

/// Level `n_y ≥ 1` of the gravitational well times a unit Gaussian in
/// (x, pₓ) moving freely.
#[derive(Debug, Clone, PartialEq)]
pub struct GqwState {
    level: usize,
    params: SystemParams,
    x_center: (f64, f64),
    amplitude: f64,
    energy: f64,
    y_max: f64,
    p_max: f64,
}

impl GqwState {
    /// Unnormalised state (`A_n = 1`) on the default domain
    /// `y ∈ [0, 3E/(mg)]`, `|p_y| ≤ √(10 m E)`.
    pub fn new(level: usize, params: SystemParams, x_center: (f64, f64)) -> Result<Self> {
        let energy = gqw_energy(level, &params)?;
        let m = params.mass();
        Ok(GqwState {
            level,
            params,
            x_center,
            amplitude: 1.0,
            energy,
            y_max: 3.0 * energy / (m * params.gravity()),
            p_max: (10.0 * m * energy).sqrt(),
        })
    }

    pub fn with_y_max(mut self, y_max: f64) -> Result<Self> {
        if !(y_max > 0.0 && y_max.is_finite()) {
            return Err(Error::invalid("y_max", format!("must be positive, got {y_max}")));
        }
        self.y_max = y_max;
        Ok(self)
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// The state with `A_n` from [`normalize_gqw`].
    pub fn normalized(self, grid: SectorGrid, mode: GqwNormalization) -> Result<Self> {
        let a = normalize_gqw(&self, grid, mode)?;
        Ok(self.with_amplitude(a))
    }

    pub fn level(&self) -> usize {
        self.level
    }
    pub fn params(&self) -> &SystemParams {
        &self.params
    }
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
    pub fn energy(&self) -> f64 {
        self.energy
    }
    pub fn y_max(&self) -> f64 {
        self.y_max
    }
    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    /// Airy scale `k = (8/(m g² ħ²))^{1/3}`.
    pub fn airy_scale(&self) -> f64 {
        let (m, g, h) = (self.params.mass(), self.params.gravity(), self.params.hbar());
        (8.0 / (m * g * g * h * h)).cbrt()
    }

    /// `ξ = p_y²/2m + m g y`.
    pub fn xi(&self, y: f64, py: f64) -> f64 {
        let m = self.params.mass();
        py * py / (2.0 * m) + m * self.params.gravity() * y
    }

    /// `W_y` as a function of ξ, without the domain check.
    pub fn sector_of_xi(&self, xi: f64) -> f64 {
        self.amplitude * airy_ai(self.airy_scale() * (xi - self.energy))
    }

    /// Gaussian `π⁻¹ exp(−(x − x₀)² − (pₓ − pₓ₀)²)`.
    fn x_factor(&self, x: f64, px: f64) -> f64 {
        let (x0, p0) = self.x_center;
        (-(x - x0).powi(2) - (px - p0).powi(2)).exp() / PI
    }

    fn check_domain(&self, y: f64) -> Result<()> {
        if (0.0..=self.y_max).contains(&y) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(format!(
                "y = {y} outside [0, {}] for the gravitational well",
                self.y_max
            )))
        }
    }

    pub fn eval_gqw(&self, pt: &PhasePoint) -> Result<f64> {
        self.eval_at(pt, 0.0)
    }

    /// The state after time `t`: the Airy factor is invariant under the
    /// ballistic flow and the Gaussian is carried along free x-motion.
    pub fn eval_at(&self, pt: &PhasePoint, t: f64) -> Result<f64> {
        self.check_domain(pt.y)?;
        let x_back = pt.x - pt.px * t / self.params.mass();
        Ok(self.x_factor(x_back, pt.px) * self.sector_of_xi(self.xi(pt.y, pt.py)))
    }

    /// Midpoint scheme on `[0, y_max] × [−p_max, p_max]`.
    pub fn sector_scheme(&self, grid: SectorGrid) -> Result<QuadratureScheme> {
        QuadratureScheme::box_axes(vec![
            BoxAxis::new(0.0, self.y_max, grid.y_nodes),
            BoxAxis::new(-self.p_max, self.p_max, grid.p_nodes),
        ])
    }

    fn sector_integral(&self, grid: SectorGrid, mode: GqwNormalization) -> Result<f64> {
        let scale = self.airy_scale();
        let unit = self.clone().with_amplitude(1.0);
        let f = |z: &[f64]| {
            let v = airy_ai(scale * (unit.xi(z[0], z[1]) - unit.energy));
            Ok(match mode {
                GqwNormalization::Absolute => v.abs(),
                GqwNormalization::Signed => v,
            })
        };
        try_integrate(f, 2, &self.sector_scheme(grid)?)
    }
}

impl WignerFunction for GqwState {
    fn value(&self, pt: &PhasePoint) -> Result<f64> {
        self.eval_gqw(pt)
    }

    fn label(&self) -> String {
        format!("gravitational well level {}", self.level)
    }
}

/// `E_n = −(m g² ħ²/2)^{1/3} λ_n` with λ_n the n-th zero of Ai.
pub fn gqw_energy(level: usize, params: &SystemParams) -> Result<f64> {
    if level == 0 {
        return Err(Error::invalid("n_y", "well levels are numbered from 1"));
    }
    let g = params.gravity();
    if g == 0.0 {
        return Err(Error::Degenerate("no bound states without gravity".into()));
    }
    let (m, h) = (params.mass(), params.hbar());
    Ok(-(m * g * g * h * h / 2.0).cbrt() * airy_zero(level)?)
}

/// The amplitude `A_n` normalising the (y, p_y) factor on the state's
/// domain.
///
/// Truncation is checked by doubling `y_max` at fixed grid spacing; a
/// relative change above 1e−6 is reported as non-convergence.
pub fn normalize_gqw(state: &GqwState, grid: SectorGrid, mode: GqwNormalization) -> Result<f64> {
    let base = state.sector_integral(grid, mode)?;
    let doubled = state.clone().with_y_max(2.0 * state.y_max)?.sector_integral(
        SectorGrid {
            y_nodes: 2 * grid.y_nodes,
            ..grid
        },
        mode,
    )?;
    let change = (doubled - base).abs() / base.abs();
    if !(change <= 1e-6) {
        return Err(Error::NotConverged(format!(
            "well normalisation changes by {change:e} when y_max doubles from {}",
            state.y_max
        )));
    }
    if !(base > 0.0) {
        return Err(Error::Degenerate(format!("sector integral {base} is not positive")));
    }
    Ok(1.0 / base)
}

/// Central-difference residual of `[ξ − (ħ² m g²/8) ∂²_ξ − E] W_y = 0`
/// relative to max |W_y|.
pub fn stargen_residual(state: &GqwState, xi: f64, h: f64) -> f64 {
    stargen_residual_at(state, state.energy, xi, h)
}

/// As [`stargen_residual`] with an explicit trial energy in the operator.
pub fn stargen_residual_at(state: &GqwState, energy: f64, xi: f64, h: f64) -> f64 {
    let p = &state.params;
    let coeff = p.hbar() * p.hbar() * p.mass() * p.gravity() * p.gravity() / 8.0;
    let w = |s: f64| state.sector_of_xi(s);
    let second = (w(xi + h) - 2.0 * w(xi) + w(xi - h)) / (h * h);
    let r = (xi - energy) * w(xi) - coeff * second;
    r.abs() / (state.amplitude.abs() * AI_MAX)
}
