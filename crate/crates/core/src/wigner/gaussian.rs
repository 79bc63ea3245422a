use std::f64::consts::PI;

use super::WignerFunction;
use crate::error::Result;
use crate::model::PhasePoint;

/// Unit-width Gaussian `π⁻² exp(−|r − r₀|² − |p − p₀|²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWigner {
    pub center: PhasePoint,
}

impl GaussianWigner {
    pub const PEAK: f64 = 1.0 / (PI * PI);

    pub fn new(center: PhasePoint) -> Self {
        GaussianWigner { center }
    }

    pub fn eval(&self, pt: &PhasePoint) -> f64 {
        Self::PEAK * (-(*pt - self.center).norm_sq()).exp()
    }
}

impl WignerFunction for GaussianWigner {
    fn value(&self, pt: &PhasePoint) -> Result<f64> {
        Ok(self.eval(pt))
    }

    fn label(&self) -> String {
        let c = self.center;
        format!("Gaussian({}, {}, {}, {})", c.x, c.y, c.px, c.py)
    }
}
