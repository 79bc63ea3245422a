use std::f64::consts::PI;

use super::{GaussianSector, SectorAxes, SeparableGround, WignerFunction};
use crate::error::{Error, Result};
use crate::model::{PhasePoint, SystemKind, SystemParams};
use crate::specfun::laguerre;

/// Stationary state |n₁, n₂⟩ of the oscillator in a field.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryHoState {
    n1: usize,
    n2: usize,
    params: SystemParams,
}

impl StationaryHoState {
    pub fn new(n1: usize, n2: usize, params: SystemParams) -> Result<Self> {
        if params.kind() != SystemKind::HoField {
            return Err(Error::WrongSystem {
                operation: "oscillator stationary state",
                kind: params.kind().name(),
            });
        }
        if params.frequencies().big_omega == 0.0 {
            return Err(Error::Degenerate("oscillator state needs ω² + ω₀² > 0".into()));
        }
        Ok(StationaryHoState { n1, n2, params })
    }

    pub fn ground(params: SystemParams) -> Result<Self> {
        Self::new(0, 0, params)
    }

    pub fn quanta(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// `(Ω₊, Ω₋) = λ/κ r² + κ/λ p² ∓ 2 (x p_y − y p_x)`; both are sums of
    /// two squares and hence nonnegative.
    pub fn invariants(&self, pt: &PhasePoint) -> (f64, f64) {
        let ratio = self.params.frequencies().ratio();
        let base = ratio * (pt.x * pt.x + pt.y * pt.y) + (pt.px * pt.px + pt.py * pt.py) / ratio;
        let lz = pt.angular_momentum();
        (base - 2.0 * lz, base + 2.0 * lz)
    }

    pub fn eval(&self, pt: &PhasePoint) -> f64 {
        let hbar = self.params.hbar();
        let ratio = self.params.frequencies().ratio();
        let base = ratio * (pt.x * pt.x + pt.y * pt.y) + (pt.px * pt.px + pt.py * pt.py) / ratio;
        let (plus, minus) = self.invariants(pt);
        let sign = if (self.n1 + self.n2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        sign / (PI * PI * hbar * hbar)
            * (-base / hbar).exp()
            * laguerre(self.n1, plus / hbar)
            * laguerre(self.n2, minus / hbar)
    }

    /// The ground state as a product over (x, p_x) and (y, p_y).
    pub fn ground_sectors(&self) -> Result<SeparableGround> {
        if (self.n1, self.n2) != (0, 0) {
            return Err(Error::invalid("n", "only the ground state factorises"));
        }
        let hbar = self.params.hbar();
        let ratio = self.params.frequencies().ratio();
        let sector = GaussianSector {
            prefactor: 1.0 / (PI * hbar),
            qq: ratio / hbar,
            pp: 1.0 / (ratio * hbar),
            qp: 0.0,
        };
        Ok(SeparableGround {
            axes: SectorAxes::Cartesian,
            sectors: [sector, sector],
        })
    }
}

impl WignerFunction for StationaryHoState {
    fn value(&self, pt: &PhasePoint) -> Result<f64> {
        Ok(self.eval(pt))
    }

    fn label(&self) -> String {
        format!("oscillator |{}, {}>", self.n1, self.n2)
    }
}

/// `ħ[Ω(n₁ + n₂ + 1) + ω(n₁ − n₂)]`.
pub fn ho_energy(n1: usize, n2: usize, params: &SystemParams) -> Result<f64> {
    if params.kind().is_gravitational() {
        return Err(Error::WrongSystem {
            operation: "oscillator spectrum",
            kind: params.kind().name(),
        });
    }
    let f = params.frequencies();
    let (a, b) = (n1 as f64, n2 as f64);
    Ok(params.hbar() * (f.big_omega * (a + b + 1.0) + f.omega * (a - b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Flow;
    use crate::quadrature::{integrate, QuadratureScheme};
    use proptest::prelude::*;

    #[test]
    fn ground_state_peak() {
        let s = StationaryHoState::ground(SystemParams::ho(0.0, 1.0).unwrap()).unwrap();
        assert!((s.eval(&PhasePoint::ORIGIN) - 1.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn sign_at_the_origin() {
        let p = SystemParams::ho(0.6, 1.0).unwrap();
        for n1 in 0..4 {
            for n2 in 0..4 {
                let v = StationaryHoState::new(n1, n2, p).unwrap().eval(&PhasePoint::ORIGIN);
                let sign = if (n1 + n2) % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(v.signum(), sign);
            }
        }
    }

    #[test]
    fn ground_state_is_normalised() {
        for (b, w0, m) in [(0.0, 1.0, 1.0), (1.0, 1.0, 1.0), (0.5, 2.0, 1.7)] {
            let p = SystemParams::new(SystemKind::HoField, m, 1.0, 1.0, b, w0, 0.0).unwrap();
            let s = StationaryHoState::ground(p).unwrap();
            let ratio = p.frequencies().ratio();
            let q = ratio.sqrt().recip();
            let scheme = QuadratureScheme::hermite_axes(
                [q, q, 1.0 / q, 1.0 / q]
                    .iter()
                    .map(|&scale| crate::quadrature::HermiteAxis {
                        order: 12,
                        center: 0.0,
                        scale,
                    })
                    .collect(),
            )
            .unwrap();
            let v = integrate(|z| s.eval(&PhasePoint::from_slice(z)), 4, &scheme).unwrap();
            assert!((v - 1.0).abs() < 1e-8, "{v}");
        }
    }

    #[test]
    fn ground_sectors_reproduce_the_state() {
        let p = SystemParams::ho(0.8, 1.3).unwrap();
        let s = StationaryHoState::ground(p).unwrap();
        let sep = s.ground_sectors().unwrap();
        let z = PhasePoint::new(0.3, -0.4, 1.1, 0.2);
        assert!((sep.value(&z) - s.eval(&z)).abs() < 1e-16);
        assert!((sep.sectors[0].total() - 1.0).abs() < 1e-14);
        assert!(StationaryHoState::new(1, 0, p).unwrap().ground_sectors().is_err());
    }

    #[test]
    fn stationary_under_the_flow() {
        let p = SystemParams::ho(0.9, 1.0).unwrap();
        let flow = Flow::resolve(&p);
        let s = StationaryHoState::new(2, 1, p).unwrap();
        let z = PhasePoint::new(0.5, -0.2, 0.3, 0.8);
        let v0 = s.eval(&z);
        for t in [0.3, 1.7, 5.0, 19.0] {
            assert!((s.eval(&flow.evolve(&z, t)) - v0).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_examples() {
        let p = SystemParams::ho(1.0, 1.0).unwrap();
        // ω = 0.5, Ω = √1.25
        let big = 1.25f64.sqrt();
        assert!((ho_energy(0, 0, &p).unwrap() - big).abs() < 1e-15);
        let split = ho_energy(1, 0, &p).unwrap() - ho_energy(0, 1, &p).unwrap();
        assert!((split - 1.0).abs() < 1e-14);
        assert!(ho_energy(0, 0, &SystemParams::gqw_ballistic(2.0).unwrap()).is_err());
    }

    #[test]
    fn rejects_other_systems() {
        assert!(StationaryHoState::ground(SystemParams::free(1.0).unwrap()).is_err());
        assert!(StationaryHoState::ground(SystemParams::ho(0.0, 0.0).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn invariants_are_nonnegative(
            b in 0.0f64..3.0, w0 in 0.1f64..3.0,
            x in -5.0f64..5.0, y in -5.0f64..5.0, px in -5.0f64..5.0, py in -5.0f64..5.0,
        ) {
            let s = StationaryHoState::ground(SystemParams::ho(b, w0).unwrap()).unwrap();
            let (plus, minus) = s.invariants(&PhasePoint::new(x, y, px, py));
            let scale = 1.0 + x * x + y * y + px * px + py * py;
            prop_assert!(plus >= -1e-12 * scale);
            prop_assert!(minus >= -1e-12 * scale);
        }
    }
}
