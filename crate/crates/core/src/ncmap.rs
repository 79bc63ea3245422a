//! Noncommutative phase-space parameters expressed as an effective
//! magnetic field.
//!
//! The antisymmetric matrices θ_{ij}, η_{ij} are taken as θ ε_{ij}, η ε_{ij},
//! so every relation reduces to the scalars θ and η.

use crate::error::{Error, Result};
use crate::model::{PhasePoint, SystemKind, SystemParams};

/// Relative distance from the singular point θη = ħ² treated as singular.
const SINGULAR_TOLERANCE: f64 = 1e-12;

/// Position (θ) and momentum (η) noncommutativity with the map's scale
/// factors μ, ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcParams {
    theta: f64,
    eta: f64,
    mu: f64,
    nu: f64,
}

impl NcParams {
    pub fn new(theta: f64, eta: f64, mu: f64, nu: f64) -> Result<Self> {
        for (name, v) in [("theta", theta), ("eta", eta)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        for (name, v) in [("mu", mu), ("nu", nu)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
            }
        }
        Ok(NcParams { theta, eta, mu, nu })
    }

    /// θ and η with unit scale factors.
    pub fn plain(theta: f64, eta: f64) -> Result<Self> {
        Self::new(theta, eta, 1.0, 1.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
}

fn nonzero_charge(params: &SystemParams) -> Result<f64> {
    let q = params.charge();
    if q == 0.0 {
        Err(Error::invalid("charge", "a neutral particle has no effective field"))
    } else {
        Ok(q)
    }
}

/// `B₀ = m² ω₀² θ/(qħ) + η/(qħ)` for the oscillator.
pub fn effective_b0_ho(nc: &NcParams, params: &SystemParams) -> Result<f64> {
    let q = nonzero_charge(params)?;
    let w0 = params.omega0();
    if !(w0 > 0.0) {
        return Err(Error::invalid("omega0", "the oscillator map needs ω₀ > 0"));
    }
    let (m, h) = (params.mass(), params.hbar());
    Ok(m * m * w0 * w0 * nc.theta / (q * h) + nc.eta / (q * h))
}

/// `B₀ = η/(qħ)`; θ drops out for the free particle.
pub fn effective_b0_free(nc: &NcParams, params: &SystemParams) -> Result<f64> {
    let q = nonzero_charge(params)?;
    Ok(nc.eta / (q * params.hbar()))
}

/// Affine change of the first coordinate, `x → scale·x + shear·p_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateShift {
    pub scale: f64,
    pub shear: f64,
}

impl CoordinateShift {
    pub const IDENTITY: CoordinateShift = CoordinateShift { scale: 1.0, shear: 0.0 };

    pub fn apply(&self, pt: &PhasePoint) -> PhasePoint {
        PhasePoint {
            x: self.scale * pt.x + self.shear * pt.py,
            ..*pt
        }
    }
}

/// Field and initial-condition shift for the gravitational well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GqwNcMap {
    pub field: f64,
    pub shift: CoordinateShift,
}

/// `B₀ = η/(qħ)` and `x → ν x − θ/(2νħ) p_y`.
pub fn gqw_nc_map(nc: &NcParams, params: &SystemParams) -> Result<GqwNcMap> {
    let q = nonzero_charge(params)?;
    let h = params.hbar();
    Ok(GqwNcMap {
        field: nc.eta / (q * h),
        shift: CoordinateShift {
            scale: nc.nu,
            shear: -nc.theta / (2.0 * nc.nu * h),
        },
    })
}

/// `s = 1/(μν) − 1`.
pub fn auxiliary_s(mu: f64, nu: f64) -> Result<f64> {
    let prod = mu * nu;
    if !(prod > 0.0 && prod.is_finite()) {
        return Err(Error::invalid("mu*nu", format!("must be positive, got {prod}")));
    }
    Ok(1.0 / prod - 1.0)
}

/// Whether `Σ = (1 − θη/ħ²)·1` is invertible, i.e. θη ≠ ħ².
pub fn sigma_invertible(nc: &NcParams, hbar: f64) -> bool {
    let h2 = hbar * hbar;
    (h2 - nc.theta * nc.eta).abs() > SINGULAR_TOLERANCE * h2
}

/// System and initial point after replacing noncommutativity by a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcMapping {
    pub params: SystemParams,
    pub shift: CoordinateShift,
}

impl NcMapping {
    pub fn initial_point(&self, pt: &PhasePoint) -> PhasePoint {
        self.shift.apply(pt)
    }
}

/// Applies the map matching `params.kind()`. A gravitational well left
/// without field (η = 0) is returned as the field-free variant.
pub fn map_system(nc: &NcParams, params: &SystemParams) -> Result<NcMapping> {
    match params.kind() {
        SystemKind::HoField => Ok(NcMapping {
            params: params.with_field(effective_b0_ho(nc, params)?)?,
            shift: CoordinateShift::IDENTITY,
        }),
        SystemKind::FreeField => Ok(NcMapping {
            params: params.with_field(effective_b0_free(nc, params)?)?,
            shift: CoordinateShift::IDENTITY,
        }),
        SystemKind::GqwField | SystemKind::GqwBallistic => {
            let map = gqw_nc_map(nc, params)?;
            let mapped = if map.field == 0.0 {
                params.with_field(0.0)?.with_kind(SystemKind::GqwBallistic)?
            } else {
                params.with_kind(SystemKind::GqwField)?.with_field(map.field)?
            };
            Ok(NcMapping {
                params: mapped,
                shift: map.shift,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ho() -> SystemParams {
        SystemParams::ho(0.0, 1.0).unwrap()
    }

    #[test]
    fn oscillator_field() {
        assert_eq!(
            effective_b0_ho(&NcParams::plain(0.0, 0.0).unwrap(), &ho()).unwrap(),
            0.0
        );
        let b = effective_b0_ho(&NcParams::plain(0.1, 0.2).unwrap(), &ho()).unwrap();
        assert!((b - 0.3).abs() < 1e-15);
    }

    #[test]
    fn mass_scaling_of_the_oscillator_terms() {
        let heavy = SystemParams::new(SystemKind::HoField, 2.0, 1.0, 1.0, 0.0, 1.0, 0.0).unwrap();
        let theta = NcParams::plain(0.1, 0.0).unwrap();
        let eta = NcParams::plain(0.0, 0.2).unwrap();
        let r_theta = effective_b0_ho(&theta, &heavy).unwrap() / effective_b0_ho(&theta, &ho()).unwrap();
        assert!((r_theta - 4.0).abs() < 1e-14);
        assert_eq!(
            effective_b0_ho(&eta, &heavy).unwrap(),
            effective_b0_ho(&eta, &ho()).unwrap()
        );
    }

    #[test]
    fn oscillator_map_preconditions() {
        let nc = NcParams::plain(0.1, 0.2).unwrap();
        let neutral = SystemParams::new(SystemKind::HoField, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0).unwrap();
        assert!(effective_b0_ho(&nc, &neutral).is_err());
        assert!(effective_b0_ho(&nc, &SystemParams::ho(0.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn free_field_ignores_theta() {
        let free = SystemParams::free(0.0).unwrap();
        assert_eq!(
            effective_b0_free(&NcParams::plain(0.3, 0.0).unwrap(), &free).unwrap(),
            0.0
        );
        assert_eq!(
            effective_b0_free(&NcParams::plain(0.0, 0.5).unwrap(), &free).unwrap(),
            0.5
        );
        for i in 0..=20 {
            let nc = NcParams::plain(0.5 * i as f64, 0.5).unwrap();
            assert_eq!(effective_b0_free(&nc, &free).unwrap(), 0.5);
        }
    }

    #[test]
    fn oscillator_map_tends_to_the_free_map() {
        let nc = NcParams::plain(0.7, 0.4).unwrap();
        let free = effective_b0_free(&nc, &SystemParams::free(0.0).unwrap()).unwrap();
        let mut last = f64::INFINITY;
        for w0 in [1e-1, 1e-3, 1e-6] {
            let b = effective_b0_ho(&nc, &SystemParams::ho(0.0, w0).unwrap()).unwrap();
            let gap = (b - free).abs();
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 1e-12);
    }

    #[test]
    fn well_map() {
        let p = SystemParams::gqw_field(0.0, 2.0).unwrap();
        let id = gqw_nc_map(&NcParams::plain(0.0, 0.3).unwrap(), &p).unwrap();
        assert_eq!(id.shift, CoordinateShift::IDENTITY);
        assert!((id.field - 0.3).abs() < 1e-15);
        let sheared = gqw_nc_map(&NcParams::plain(0.2, 0.3).unwrap(), &p).unwrap();
        let moved = sheared.shift.apply(&PhasePoint::new(0.0, 0.5, 0.0, 1.0));
        assert!((moved.x - -0.1).abs() < 1e-15);
        assert_eq!(moved.y, 0.5);
    }

    #[test]
    fn well_without_eta_becomes_ballistic() {
        let p = SystemParams::gqw_field(1.0, 2.0).unwrap();
        let m = map_system(&NcParams::plain(0.2, 0.0).unwrap(), &p).unwrap();
        assert_eq!(m.params.kind(), SystemKind::GqwBallistic);
        assert_eq!(m.params.field(), 0.0);
        let m = map_system(&NcParams::plain(0.2, 0.5).unwrap(), &p).unwrap();
        assert_eq!(m.params.kind(), SystemKind::GqwField);
        assert_eq!(m.params.field(), 0.5);
    }

    #[test]
    fn auxiliary_parameter() {
        assert_eq!(auxiliary_s(1.0, 1.0).unwrap(), 0.0);
        assert_eq!(auxiliary_s(2.0, 0.25).unwrap(), 1.0);
        assert_eq!(auxiliary_s(2.0, 1.0).unwrap(), -0.5);
        assert!(auxiliary_s(0.0, 1.0).is_err());
    }

    #[test]
    fn invertibility() {
        assert!(sigma_invertible(&NcParams::plain(0.0, 0.0).unwrap(), 1.0));
        assert!(!sigma_invertible(&NcParams::plain(2.0, 0.5).unwrap(), 1.0));
        assert!(!sigma_invertible(&NcParams::plain(1.0, 4.0).unwrap(), 2.0));
        assert!(sigma_invertible(&NcParams::plain(1.0, 0.5).unwrap(), 1.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(NcParams::new(-0.1, 0.0, 1.0, 1.0).is_err());
        assert!(NcParams::new(0.0, f64::NAN, 1.0, 1.0).is_err());
        assert!(NcParams::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(NcParams::new(0.0, 0.0, 1.0, -2.0).is_err());
    }

    proptest! {
        #[test]
        fn oscillator_field_is_zero_only_without_noncommutativity(
            theta in 0.0f64..5.0, eta in 0.0f64..5.0, w0 in 0.1f64..3.0,
        ) {
            let b = effective_b0_ho(&NcParams::plain(theta, eta).unwrap(), &SystemParams::ho(0.0, w0).unwrap()).unwrap();
            prop_assert!(b >= 0.0);
            prop_assert_eq!(b == 0.0, theta == 0.0 && eta == 0.0);
        }
    }
}
