use std::f64::consts::PI;

use super::{GaussianSector, SectorAxes, SeparableGround, WignerFunction};
use crate::error::{Error, Result};
use crate::model::{PhasePoint, SystemKind, SystemParams};
use crate::quadrature::{try_integrate, QuadratureScheme};
use crate::specfun::laguerre;

/// Landau level `n` of the free particle in a field,
/// `𝒩 (−1)ⁿ/(πħ) e^{−Ω/ħ} Lₙ(Ω/ħ)`.
///
/// The quadratic form Ω has rank 2, so the state is not integrable over the
/// whole phase space; `𝒩` is fixed by integrating over a centred box.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauState {
    n: usize,
    params: SystemParams,
    normalization: f64,
    box_half_width: Option<f64>,
}

impl LandauState {
    pub const DEFAULT_HALF_WIDTH: f64 = 8.0;
    pub const DEFAULT_BOX_NODES: usize = 41;

    /// The printed state with `𝒩 = 1`.
    pub fn new(n: usize, params: SystemParams) -> Result<Self> {
        if params.kind() != SystemKind::FreeField {
            return Err(Error::WrongSystem {
                operation: "Landau state",
                kind: params.kind().name(),
            });
        }
        if params.coupling() <= 0.0 {
            return Err(Error::Degenerate("Landau state needs a nonzero field (ω > 0)".into()));
        }
        Ok(LandauState {
            n,
            params,
            normalization: 1.0,
            box_half_width: None,
        })
    }

    /// `𝒩` chosen so that the state integrates to 1 over `[−L, L]⁴`, using a
    /// midpoint rule with `nodes` points per axis.
    pub fn normalized(n: usize, params: SystemParams, half_width: f64, nodes: usize) -> Result<Self> {
        let raw = Self::new(n, params)?;
        let scheme = QuadratureScheme::centered_box(4, half_width, nodes)?;
        let total = try_integrate(|z| Ok(raw.eval(&PhasePoint::from_slice(z))), 4, &scheme)?;
        if !(total > 0.0) {
            return Err(Error::Degenerate(format!(
                "Landau level {n} has box integral {total}; cannot normalise"
            )));
        }
        Ok(LandauState {
            normalization: 1.0 / total,
            box_half_width: Some(half_width),
            ..raw
        })
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn box_half_width(&self) -> Option<f64> {
        self.box_half_width
    }

    /// `Ω = mω r² + p²/(mω) − 2 (x p_y − y pₓ)`
    /// `  = (√(mω) x − p_y/√(mω))² + (√(mω) y + pₓ/√(mω))²`.
    pub fn quadratic_form(&self, pt: &PhasePoint) -> f64 {
        let mw = self.params.mass() * self.params.coupling();
        mw * (pt.x * pt.x + pt.y * pt.y) + (pt.px * pt.px + pt.py * pt.py) / mw - 2.0 * pt.angular_momentum()
    }

    pub fn eval(&self, pt: &PhasePoint) -> f64 {
        let hbar = self.params.hbar();
        let u = self.quadratic_form(pt) / hbar;
        let sign = if self.n.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.normalization * sign / (PI * hbar) * (-u).exp() * laguerre(self.n, u)
    }

    /// The ground level as a product over (x, p_y) and (y, pₓ).
    pub fn ground_sectors(&self) -> Result<SeparableGround> {
        if self.n != 0 {
            return Err(Error::invalid("n", "only the lowest level factorises"));
        }
        let hbar = self.params.hbar();
        let mw = self.params.mass() * self.params.coupling();
        let sector = |prefactor: f64, qp: f64| GaussianSector {
            prefactor,
            qq: mw / hbar,
            pp: 1.0 / (mw * hbar),
            qp,
        };
        Ok(SeparableGround {
            axes: SectorAxes::Crossed,
            sectors: [
                sector(self.normalization / (PI * hbar), -1.0 / hbar),
                sector(1.0, 1.0 / hbar),
            ],
        })
    }
}

impl WignerFunction for LandauState {
    fn value(&self, pt: &PhasePoint) -> Result<f64> {
        Ok(self.eval(pt))
    }

    fn label(&self) -> String {
        format!("Landau level {}", self.n)
    }
}

/// `ħω(2n + 1)`.
pub fn landau_energy(n: usize, params: &SystemParams) -> Result<f64> {
    if params.kind() != SystemKind::FreeField {
        return Err(Error::WrongSystem {
            operation: "Landau spectrum",
            kind: params.kind().name(),
        });
    }
    Ok(params.hbar() * params.coupling() * (2.0 * n as f64 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Flow;
    use crate::quadrature::integrate;
    use rand::{Rng, SeedableRng};

    fn params(b: f64) -> SystemParams {
        SystemParams::free(b).unwrap()
    }

    #[test]
    fn value_on_the_null_set() {
        let s = LandauState::new(0, params(1.0)).unwrap();
        // √(mω) x = p_y/√(mω) and √(mω) y = −pₓ/√(mω) with mω = 0.5
        let z = PhasePoint::new(2.0, 1.0, -0.5, 1.0);
        assert!(s.quadratic_form(&z).abs() < 1e-15);
        assert!((s.eval(&z) - 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn quadratic_form_is_semidefinite() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..10_000 {
            let b = rng.gen_range(0.01..4.0);
            let s = LandauState::new(0, params(b)).unwrap();
            let z = PhasePoint::new(
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
            );
            let mw = 0.5 * b;
            let squares = (mw.sqrt() * z.x - z.py / mw.sqrt()).powi(2) + (mw.sqrt() * z.y + z.px / mw.sqrt()).powi(2);
            let q = s.quadratic_form(&z);
            assert!(q >= -1e-9 * (1.0 + squares));
            assert!((q - squares).abs() <= 1e-9 * (1.0 + squares));
        }
    }

    #[test]
    fn energies() {
        // ω = 0.5 needs B₀ = 1 with q = m = 1
        assert!((landau_energy(0, &params(1.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((landau_energy(3, &params(1.0)).unwrap() - 3.5).abs() < 1e-15);
        assert!(landau_energy(0, &SystemParams::ho(1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn zero_field_is_rejected() {
        assert!(matches!(LandauState::new(0, params(0.0)), Err(Error::Degenerate(_))));
        assert!(LandauState::new(0, SystemParams::ho(1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn box_normalisation() {
        let s = LandauState::normalized(0, params(1.0), 8.0, 33).unwrap();
        let scheme = QuadratureScheme::centered_box(4, 8.0, 33).unwrap();
        let v = integrate(|z| s.eval(&PhasePoint::from_slice(z)), 4, &scheme).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // the ridge carries roughly (2L)² of phase-space area per unit height
        let expected = 1.0 / (4.0 * 64.0 * 0.5);
        assert!(
            (s.normalization() / expected - 1.0).abs() < 0.05,
            "{}",
            s.normalization()
        );
    }

    #[test]
    fn sectors_reproduce_the_state() {
        let s = LandauState::new(0, params(0.6)).unwrap();
        let sep = s.ground_sectors().unwrap();
        for z in [
            PhasePoint::new(0.3, -1.0, 0.4, 2.0),
            PhasePoint::new(-2.0, 0.5, 1.5, -0.1),
        ] {
            assert!((sep.value(&z) - s.eval(&z)).abs() < 1e-16);
        }
        assert!(LandauState::new(1, params(0.6)).unwrap().ground_sectors().is_err());
    }

    #[test]
    fn stationary_under_the_cyclotron_flow() {
        let p = params(0.8);
        let flow = Flow::resolve(&p);
        let s = LandauState::new(2, p).unwrap();
        let z = PhasePoint::new(0.4, 0.9, -0.6, 0.2);
        let v0 = s.eval(&z);
        for t in [0.5, 3.0, 11.0] {
            assert!((s.eval(&flow.evolve(&z, t)) - v0).abs() < 1e-12);
        }
    }
}
