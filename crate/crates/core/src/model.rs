//! Physical parameters, derived frequencies and phase-space points.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// The four system variants that share the magnetic-oscillator Hamiltonian
/// family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// 2D isotropic oscillator (frequency ω₀) in a perpendicular field.
    HoField,
    /// Free charged particle in a perpendicular field (ω₀ = 0).
    FreeField,
    /// Particle above a floor in a linear gravitational potential, no field.
    GqwBallistic,
    /// Gravitational well with an additional perpendicular field.
    GqwField,
}

impl SystemKind {
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::HoField => "HO_FIELD",
            SystemKind::FreeField => "FREE_FIELD",
            SystemKind::GqwBallistic => "GQW_BALLISTIC",
            SystemKind::GqwField => "GQW_FIELD",
        }
    }

    pub fn is_gravitational(self) -> bool {
        matches!(self, SystemKind::GqwBallistic | SystemKind::GqwField)
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Physical constants of one system variant.
///
/// Immutable once built; every derived frequency is recomputed on demand by
/// [`SystemParams::frequencies`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    kind: SystemKind,
    mass: f64,
    hbar: f64,
    charge: f64,
    field: f64,
    omega0: f64,
    gravity: f64,
}

/// Frequencies derived from [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequencies {
    /// Coupling frequency ω = qB₀/2m (half the cyclotron frequency).
    pub omega: f64,
    /// λ = √(m(ω² + ω₀²)/2).
    pub lambda: f64,
    /// κ = 1/√(2m).
    pub kappa: f64,
    /// Effective oscillator frequency Ω = 2λκ = √(ω² + ω₀²).
    pub big_omega: f64,
}

impl Frequencies {
    /// λ/κ, which equals mΩ.
    pub fn ratio(&self) -> f64 {
        self.lambda / self.kappa
    }
}

impl SystemParams {
    pub fn new(
        kind: SystemKind,
        mass: f64,
        hbar: f64,
        charge: f64,
        field: f64,
        omega0: f64,
        gravity: f64,
    ) -> Result<Self> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("must be finite, got {v}")))
            }
        };
        finite("mass", mass)?;
        finite("hbar", hbar)?;
        finite("charge", charge)?;
        finite("field", field)?;
        finite("omega0", omega0)?;
        finite("gravity", gravity)?;
        if mass <= 0.0 {
            return Err(Error::invalid("mass", format!("must be > 0, got {mass}")));
        }
        if hbar <= 0.0 {
            return Err(Error::invalid("hbar", format!("must be > 0, got {hbar}")));
        }
        if field < 0.0 {
            return Err(Error::invalid("field", format!("must be >= 0, got {field}")));
        }
        if omega0 < 0.0 {
            return Err(Error::invalid("omega0", format!("must be >= 0, got {omega0}")));
        }
        if gravity < 0.0 {
            return Err(Error::invalid("gravity", format!("must be >= 0, got {gravity}")));
        }
        if kind != SystemKind::HoField && omega0 != 0.0 {
            return Err(Error::invalid("omega0", format!("must be 0 for {kind}, got {omega0}")));
        }
        if !kind.is_gravitational() && gravity != 0.0 {
            return Err(Error::invalid(
                "gravity",
                format!("must be 0 for {kind}, got {gravity}"),
            ));
        }
        if kind == SystemKind::GqwBallistic && field != 0.0 {
            return Err(Error::invalid("field", format!("must be 0 for {kind}, got {field}")));
        }
        Ok(SystemParams {
            kind,
            mass,
            hbar,
            charge,
            field,
            omega0,
            gravity,
        })
    }

    /// Oscillator in a field, natural units m = ħ = q = 1.
    pub fn ho(field: f64, omega0: f64) -> Result<Self> {
        Self::new(SystemKind::HoField, 1.0, 1.0, 1.0, field, omega0, 0.0)
    }

    /// Free particle in a field, natural units.
    pub fn free(field: f64) -> Result<Self> {
        Self::new(SystemKind::FreeField, 1.0, 1.0, 1.0, field, 0.0, 0.0)
    }

    /// Field-free gravitational well, natural units.
    pub fn gqw_ballistic(gravity: f64) -> Result<Self> {
        Self::new(SystemKind::GqwBallistic, 1.0, 1.0, 1.0, 0.0, 0.0, gravity)
    }

    /// Gravitational well in a field, natural units.
    pub fn gqw_field(field: f64, gravity: f64) -> Result<Self> {
        Self::new(SystemKind::GqwField, 1.0, 1.0, 1.0, field, 0.0, gravity)
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn charge(&self) -> f64 {
        self.charge
    }
    pub fn field(&self) -> f64 {
        self.field
    }
    pub fn omega0(&self) -> f64 {
        self.omega0
    }
    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    /// Same constants with a different field strength.
    pub fn with_field(&self, field: f64) -> Result<Self> {
        Self::new(
            self.kind,
            self.mass,
            self.hbar,
            self.charge,
            field,
            self.omega0,
            self.gravity,
        )
    }

    pub fn with_hbar(&self, hbar: f64) -> Result<Self> {
        Self::new(
            self.kind,
            self.mass,
            hbar,
            self.charge,
            self.field,
            self.omega0,
            self.gravity,
        )
    }

    pub fn with_kind(&self, kind: SystemKind) -> Result<Self> {
        Self::new(
            kind,
            self.mass,
            self.hbar,
            self.charge,
            self.field,
            self.omega0,
            self.gravity,
        )
    }

    /// Coupling frequency ω = qB₀/2m. The field direction is taken along +ẑ
    /// with q ≥ 0 in the default natural units; reversing it is the same as
    /// reversing time in every rotation factor.
    pub fn coupling(&self) -> f64 {
        self.charge * self.field / (2.0 * self.mass)
    }

    pub fn frequencies(&self) -> Frequencies {
        derive_frequencies(self)
    }
}

pub fn derive_frequencies(params: &SystemParams) -> Frequencies {
    let omega = params.coupling();
    let omega0 = params.omega0;
    let m = params.mass;
    let squared = omega * omega + omega0 * omega0;
    Frequencies {
        omega,
        lambda: (0.5 * m * squared).sqrt(),
        kappa: (0.5 / m).sqrt(),
        big_omega: squared.sqrt(),
    }
}

/// Weyl symbol of the Hamiltonian,
/// `λ² r² + κ² p² + ω (p₁ r₂ − p₂ r₁)` plus `m g y` for the gravitational
/// variants.
pub fn hamiltonian_value(params: &SystemParams, pt: &PhasePoint) -> f64 {
    let f = params.frequencies();
    let quadratic =
        f.lambda * f.lambda * (pt.x * pt.x + pt.y * pt.y) + f.kappa * f.kappa * (pt.px * pt.px + pt.py * pt.py);
    let angular = f.omega * (pt.px * pt.y - pt.py * pt.x);
    let potential = if params.kind.is_gravitational() {
        params.mass * params.gravity * pt.y
    } else {
        0.0
    };
    quadratic + angular + potential
}

/// A point `(x, y, pₓ, p_y)` of the two-mode phase space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint {
        x: 0.0,
        y: 0.0,
        px: 0.0,
        py: 0.0,
    };

    pub const fn new(x: f64, y: f64, px: f64, py: f64) -> Self {
        PhasePoint { x, y, px, py }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.px, self.py]
    }

    pub fn from_slice(v: &[f64]) -> Self {
        PhasePoint::new(v[0], v[1], v[2], v[3])
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.px * self.px + self.py * self.py
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// z-component of the angular momentum, `x p_y − y pₓ`.
    pub fn angular_momentum(&self) -> f64 {
        self.x * self.py - self.y * self.px
    }

    /// Rotates positions and momenta together by `angle` (counter-clockwise).
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        PhasePoint {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
            px: c * self.px - s * self.py,
            py: s * self.px + c * self.py,
        }
    }
}

impl Add for PhasePoint {
    type Output = PhasePoint;
    fn add(self, o: PhasePoint) -> PhasePoint {
        PhasePoint::new(self.x + o.x, self.y + o.y, self.px + o.px, self.py + o.py)
    }
}

impl Sub for PhasePoint {
    type Output = PhasePoint;
    fn sub(self, o: PhasePoint) -> PhasePoint {
        PhasePoint::new(self.x - o.x, self.y - o.y, self.px - o.px, self.py - o.py)
    }
}

impl Mul<f64> for PhasePoint {
    type Output = PhasePoint;
    fn mul(self, s: f64) -> PhasePoint {
        PhasePoint::new(self.x * s, self.y * s, self.px * s, self.py * s)
    }
}

impl From<[f64; 4]> for PhasePoint {
    fn from(v: [f64; 4]) -> Self {
        PhasePoint::new(v[0], v[1], v[2], v[3])
    }
}

/// Uniformly spaced time samples, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_samples: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_samples: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) {
            return Err(Error::invalid("time grid", "bounds must be finite"));
        }
        if t_end <= t_start {
            return Err(Error::invalid(
                "time grid",
                format!("t_end ({t_end}) must exceed t_start ({t_start})"),
            ));
        }
        if n_samples < 2 {
            return Err(Error::invalid(
                "time grid",
                format!("need at least 2 samples, got {n_samples}"),
            ));
        }
        Ok(TimeGrid {
            t_start,
            t_end,
            n_samples,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }
    pub fn t_end(&self) -> f64 {
        self.t_end
    }
    pub fn len(&self) -> usize {
        self.n_samples
    }
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sample(&self, i: usize) -> f64 {
        if i + 1 == self.n_samples {
            return self.t_end;
        }
        let step = (self.t_end - self.t_start) / (self.n_samples - 1) as f64;
        self.t_start + step * i as f64
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.n_samples).map(|i| self.sample(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn field_free_oscillator() {
        let f = SystemParams::ho(0.0, 1.0).unwrap().frequencies();
        assert_eq!(f.omega, 0.0);
        assert_eq!(f.big_omega, 1.0);
    }

    #[test]
    fn oscillator_in_unit_field() {
        let f = SystemParams::ho(1.0, 1.0).unwrap().frequencies();
        assert_eq!(f.omega, 0.5);
        assert_abs_diff_eq!(f.big_omega, 1.25f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn free_limit_has_big_omega_equal_to_coupling() {
        let f = SystemParams::free(1.0).unwrap().frequencies();
        assert_eq!(f.omega, 0.5);
        assert_abs_diff_eq!(f.big_omega, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(2.0 * f.lambda * f.kappa, f.omega, epsilon = 1e-15);
    }

    #[test]
    fn hamiltonian_examples() {
        let ho = SystemParams::ho(0.0, 1.0).unwrap();
        assert_abs_diff_eq!(
            hamiltonian_value(&ho, &PhasePoint::new(1.0, 0.0, 0.0, 0.0)),
            0.5,
            epsilon = 1e-15
        );
        assert_eq!(hamiltonian_value(&ho, &PhasePoint::ORIGIN), 0.0);
        let gqw = SystemParams::gqw_field(0.0, 2.0).unwrap();
        assert_abs_diff_eq!(
            hamiltonian_value(&gqw, &PhasePoint::new(0.0, 1.0, 0.0, 0.0)),
            2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn rejects_inconsistent_parameters() {
        assert!(SystemParams::new(SystemKind::HoField, -1.0, 1.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(SystemKind::HoField, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(SystemKind::FreeField, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(SystemKind::HoField, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0).is_err());
        assert!(SystemParams::new(SystemKind::GqwBallistic, 1.0, 1.0, 1.0, 0.5, 0.0, 2.0).is_err());
        assert!(SystemParams::new(SystemKind::HoField, 1.0, 1.0, 1.0, f64::NAN, 1.0, 0.0).is_err());
    }

    #[test]
    fn time_grid_endpoints() {
        let g = TimeGrid::new(0.0, 1.0, 11).unwrap();
        assert_eq!(g.sample(0), 0.0);
        assert_eq!(g.sample(10), 1.0);
        assert_abs_diff_eq!(g.sample(3), 0.3, epsilon = 1e-15);
        assert!(TimeGrid::new(1.0, 1.0, 3).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn params() -> impl Strategy<Value = SystemParams> {
            (0.1f64..5.0, 0.0f64..3.0, 0.0f64..3.0)
                .prop_map(|(m, b0, w0)| SystemParams::new(SystemKind::HoField, m, 1.0, 1.0, b0, w0, 0.0).unwrap())
        }

        proptest! {
            #[test]
            fn derived_frequency_identities(p in params()) {
                let f = p.frequencies();
                let w0 = p.omega0();
                let lhs = f.big_omega * f.big_omega;
                let rhs = f.omega * f.omega + w0 * w0;
                prop_assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(1.0));
                prop_assert!((f.lambda * f.kappa - f.big_omega / 2.0).abs() <= 1e-14 * f.big_omega.max(1.0));
                prop_assert!((f.kappa * f.kappa - 0.5 / p.mass()).abs() <= 1e-15 / p.mass());
            }

            #[test]
            fn hamiltonian_is_rotation_invariant(
                p in params(),
                v in prop::array::uniform4(-3.0f64..3.0),
                angle in 0.0f64..std::f64::consts::TAU,
            ) {
                let pt = PhasePoint::from(v);
                let h0 = hamiltonian_value(&p, &pt);
                let h1 = hamiltonian_value(&p, &pt.rotated(angle));
                prop_assert!((h0 - h1).abs() <= 1e-12 * h0.abs().max(1.0));
            }
        }
    }
}
