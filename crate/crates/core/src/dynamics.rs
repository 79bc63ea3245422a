//! Exact phase-space flows of the four system variants.
//!
//! Every flow is the closed-form solution of the canonical equations of the
//! Weyl Hamiltonian
//!
//! ```text
//! H = λ² r² + κ² p² + ω (p₁ r₂ − p₂ r₁) [+ m g r₂]
//! ṙ₁ =  2κ² p₁ + ω r₂        ṗ₁ = −2λ² r₁ + ω p₂
//! ṙ₂ =  2κ² p₂ − ω r₁        ṗ₂ = −2λ² r₂ − ω p₁ [− m g]
//! ```
//!
//! With gravity and a field the system is affine-linear; its solution is the
//! free cyclotron rotation about a particular solution that drifts with
//! constant velocity `−g/(2ω)` along x while `p_y` decreases at `mg/2` per
//! unit time. (A commonly quoted form attaches the drift to `r₂` and `p₁`
//! instead; that assignment does not satisfy the equations above.)
//!
//! Likewise the field-free well moves as `y = y₀ + p_{y0} t/m − g t²/2`, the
//! branch consistent with `ẏ = p_y/m`.

use crate::error::{Error, Result};
use crate::model::{Frequencies, PhasePoint, SystemKind, SystemParams};

/// Time derivative of a phase point under the canonical equations.
pub fn canonical_rhs(params: &SystemParams, z: &PhasePoint) -> PhasePoint {
    let f = params.frequencies();
    let two_k2 = 2.0 * f.kappa * f.kappa;
    let two_l2 = 2.0 * f.lambda * f.lambda;
    let force = if params.kind().is_gravitational() {
        params.mass() * params.gravity()
    } else {
        0.0
    };
    PhasePoint {
        x: two_k2 * z.px + f.omega * z.y,
        y: two_k2 * z.py - f.omega * z.x,
        px: -two_l2 * z.x + f.omega * z.py,
        py: -two_l2 * z.y - f.omega * z.px - force,
    }
}

/// Closed-form flow selected for a parameter set, including the documented
/// ballistic fallbacks for vanishing frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Flow {
    /// Isotropic oscillator at Ω composed with a rotation at ω.
    Oscillator { freq: Frequencies },
    /// Cyclotron motion at 2ω (Ω = ω).
    Cyclotron { mass: f64, omega: f64 },
    /// Straight lines, optionally accelerated along −y.
    Ballistic { mass: f64, gravity: f64 },
    /// Cyclotron motion plus the crossed-field drift.
    GravityCyclotron { mass: f64, omega: f64, gravity: f64 },
}

impl Flow {
    pub fn resolve(params: &SystemParams) -> Flow {
        let freq = params.frequencies();
        let mass = params.mass();
        match params.kind() {
            SystemKind::HoField if freq.big_omega > 0.0 => Flow::Oscillator { freq },
            SystemKind::FreeField if freq.omega > 0.0 => Flow::Cyclotron {
                mass,
                omega: freq.omega,
            },
            SystemKind::HoField | SystemKind::FreeField => Flow::Ballistic { mass, gravity: 0.0 },
            SystemKind::GqwField if freq.omega > 0.0 => Flow::GravityCyclotron {
                mass,
                omega: freq.omega,
                gravity: params.gravity(),
            },
            SystemKind::GqwField | SystemKind::GqwBallistic => Flow::Ballistic {
                mass,
                gravity: params.gravity(),
            },
        }
    }

    pub fn evolve(&self, z: &PhasePoint, t: f64) -> PhasePoint {
        match *self {
            Flow::Oscillator { freq } => oscillator(&freq, z, t),
            Flow::Cyclotron { mass, omega } => cyclotron(mass, omega, z, t),
            Flow::Ballistic { mass, gravity } => ballistic(mass, gravity, z, t),
            Flow::GravityCyclotron { mass, omega, gravity } => gravity_cyclotron(mass, omega, gravity, z, t),
        }
    }
}

fn oscillator(freq: &Frequencies, z: &PhasePoint, t: f64) -> PhasePoint {
    let ratio = freq.ratio();
    let (s, c) = (freq.big_omega * t).sin_cos();
    let osc = PhasePoint {
        x: z.x * c + z.px * s / ratio,
        y: z.y * c + z.py * s / ratio,
        px: z.px * c - z.x * s * ratio,
        py: z.py * c - z.y * s * ratio,
    };
    // the angular term generates a clockwise rotation at rate ω
    osc.rotated(-freq.omega * t)
}

fn cyclotron(mass: f64, omega: f64, z: &PhasePoint, t: f64) -> PhasePoint {
    // the guiding-centre split does not cancel exactly at t = 0
    if t == 0.0 {
        return *z;
    }
    let mw = mass * omega;
    let (s, c) = (2.0 * omega * t).sin_cos();
    PhasePoint {
        x: 0.5 * ((z.x + z.py / mw) + (z.x - z.py / mw) * c + (z.y + z.px / mw) * s),
        y: 0.5 * ((z.y - z.px / mw) + (z.y + z.px / mw) * c - (z.x - z.py / mw) * s),
        px: 0.5 * ((z.px - mw * z.y) + (z.px + mw * z.y) * c + (z.py - mw * z.x) * s),
        py: 0.5 * ((z.py + mw * z.x) + (z.py - mw * z.x) * c - (z.px + mw * z.y) * s),
    }
}

fn ballistic(mass: f64, gravity: f64, z: &PhasePoint, t: f64) -> PhasePoint {
    PhasePoint {
        x: z.x + z.px * t / mass,
        y: z.y + z.py * t / mass - 0.5 * gravity * t * t,
        px: z.px,
        py: z.py - mass * gravity * t,
    }
}

fn gravity_cyclotron(mass: f64, omega: f64, gravity: f64, z: &PhasePoint, t: f64) -> PhasePoint {
    if t == 0.0 {
        return *z;
    }
    // particular solution u + v t
    let offset = PhasePoint::new(0.0, 0.0, -mass * gravity / (2.0 * omega), 0.0);
    let drift = PhasePoint::new(-gravity / (2.0 * omega), 0.0, 0.0, -0.5 * mass * gravity);
    cyclotron(mass, omega, &(*z - offset), t) + offset + drift * t
}

/// Initial data `(x₀, y₀, p_{x0}, p_{y0})` paired with the system it evolves
/// under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySolution {
    pub params: SystemParams,
    pub initial: PhasePoint,
}

impl TrajectorySolution {
    pub fn new(params: SystemParams, initial: PhasePoint) -> Self {
        TrajectorySolution { params, initial }
    }

    fn require(&self, kind: SystemKind, operation: &'static str) -> Result<()> {
        if self.params.kind() == kind {
            Ok(())
        } else {
            Err(Error::WrongSystem {
                operation,
                kind: self.params.kind().name(),
            })
        }
    }

    pub fn evolve_ho(&self, t: f64) -> Result<PhasePoint> {
        self.require(SystemKind::HoField, "evolve_ho")?;
        let freq = self.params.frequencies();
        if freq.big_omega <= 0.0 {
            return Err(Error::Degenerate(
                "oscillator with ω = ω₀ = 0 has no restoring force".into(),
            ));
        }
        Ok(oscillator(&freq, &self.initial, t))
    }

    pub fn evolve_free(&self, t: f64) -> Result<PhasePoint> {
        self.require(SystemKind::FreeField, "evolve_free")?;
        let omega = self.params.coupling();
        if omega <= 0.0 {
            return Err(Error::Degenerate(
                "free particle without field: use evolve_free_ballistic".into(),
            ));
        }
        Ok(cyclotron(self.params.mass(), omega, &self.initial, t))
    }

    /// Field-free straight-line motion, the fallback for ω = 0.
    pub fn evolve_free_ballistic(&self, t: f64) -> PhasePoint {
        ballistic(self.params.mass(), 0.0, &self.initial, t)
    }

    pub fn evolve_gqw_ballistic(&self, t: f64) -> Result<PhasePoint> {
        self.require(SystemKind::GqwBallistic, "evolve_gqw_ballistic")?;
        Ok(ballistic(self.params.mass(), self.params.gravity(), &self.initial, t))
    }

    pub fn evolve_gqw_field(&self, t: f64) -> Result<PhasePoint> {
        self.require(SystemKind::GqwField, "evolve_gqw_field")?;
        let omega = self.params.coupling();
        if omega <= 0.0 {
            return Err(Error::Degenerate(
                "gravitational well without field: use GQW_BALLISTIC".into(),
            ));
        }
        Ok(gravity_cyclotron(
            self.params.mass(),
            omega,
            self.params.gravity(),
            &self.initial,
            t,
        ))
    }

    /// Dispatches on the system kind; degenerate frequencies are errors.
    pub fn evolve(&self, t: f64) -> Result<PhasePoint> {
        match self.params.kind() {
            SystemKind::HoField => self.evolve_ho(t),
            SystemKind::FreeField => self.evolve_free(t),
            SystemKind::GqwBallistic => self.evolve_gqw_ballistic(t),
            SystemKind::GqwField => self.evolve_gqw_field(t),
        }
    }

    /// The resolved flow, falling back to ballistic motion where a
    /// frequency vanishes.
    pub fn flow(&self) -> Flow {
        Flow::resolve(&self.params)
    }

    pub fn at(&self, t: f64) -> PhasePoint {
        self.flow().evolve(&self.initial, t)
    }
}

/// Max-norm mismatch between central-difference velocities of the
/// trajectory and the canonical right-hand side at time `t`.
pub fn ode_residual(sol: &TrajectorySolution, t: f64, h: f64) -> f64 {
    let flow = sol.flow();
    let plus = flow.evolve(&sol.initial, t + h).to_array();
    let minus = flow.evolve(&sol.initial, t - h).to_array();
    let rhs = canonical_rhs(&sol.params, &flow.evolve(&sol.initial, t)).to_array();
    (0..4)
        .map(|i| ((plus[i] - minus[i]) / (2.0 * h) - rhs[i]).abs())
        .fold(0.0, f64::max)
}

/// Matrix of the linear part of the time-`t` map; every flow here is affine,
/// so column `j` is `Φ_t(e_j) − Φ_t(0)`.
pub fn flow_matrix(flow: &Flow, t: f64) -> [[f64; 4]; 4] {
    let origin = flow.evolve(&PhasePoint::ORIGIN, t).to_array();
    let mut m = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut e = [0.0; 4];
        e[j] = 1.0;
        let image = flow.evolve(&PhasePoint::from(e), t).to_array();
        for i in 0..4 {
            m[i][j] = image[i] - origin[i];
        }
    }
    m
}

/// Finite-difference Jacobian of the time-`t` flow map at `z`.
pub fn flow_jacobian(flow: &Flow, z: &PhasePoint, t: f64, h: f64) -> [[f64; 4]; 4] {
    let mut jac = [[0.0; 4]; 4];
    let base = z.to_array();
    for j in 0..4 {
        let mut up = base;
        let mut down = base;
        up[j] += h;
        down[j] -= h;
        let fu = flow.evolve(&PhasePoint::from(up), t).to_array();
        let fd = flow.evolve(&PhasePoint::from(down), t).to_array();
        for i in 0..4 {
            jac[i][j] = (fu[i] - fd[i]) / (2.0 * h);
        }
    }
    jac
}

/// Determinant of a 4×4 matrix by partial-pivot elimination.
pub fn determinant4(m: [[f64; 4]; 4]) -> f64 {
    let mut a = m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let factor = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (v, p) in a[row].iter_mut().zip(pivot_row).skip(col) {
                *v -= factor * p;
            }
        }
    }
    det
}
