//! Wigner-overlap fidelity and phase-space Shannon entropy.

use rayon::prelude::*;

use crate::dynamics::Flow;
use crate::error::{Error, Result};
use crate::model::{Frequencies, PhasePoint, SystemKind, SystemParams, TimeGrid};
use crate::quadrature::{try_integrate, BoxAxis, QuadratureScheme};
use crate::wigner::{GaussianSector, GaussianWigner, LandauState, SeparableGround, StationaryHoState, WignerFunction};

/// Values in `[−CLAMP, 0)` are rounding noise and count as zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-12;

/// Below this magnitude `|W| ln |W|` is taken as its limit 0.
const ENTROPY_FLOOR: f64 = 1e-300;

/// `[∫ √(W₁ W₂)]²` by quadrature; both states must be nonnegative on
/// every node.
pub fn fidelity_quadrature<A, B>(first: &A, second: &B, scheme: &QuadratureScheme) -> Result<f64>
where
    A: WignerFunction + Sync,
    B: WignerFunction + Sync,
{
    let checked = |w: &dyn WignerFunction, pt: &PhasePoint, z: &[f64]| -> Result<f64> {
        let v = w.value(pt)?;
        if v < -NEGATIVITY_CLAMP {
            return Err(Error::Negativity {
                state: w.label(),
                value: v,
                node: z.to_vec(),
            });
        }
        Ok(v.max(0.0))
    };
    let overlap = try_integrate(
        |z| {
            let pt = PhasePoint::from_slice(z);
            Ok((checked(first, &pt, z)? * checked(second, &pt, z)?).sqrt())
        },
        4,
        scheme,
    )?;
    Ok(overlap * overlap)
}

/// Fidelity of two unit Gaussians, `exp(−|c_t − c₀|²/2)`.
pub fn fidelity_gaussian_closed(initial: &PhasePoint, moved: &PhasePoint) -> f64 {
    (-0.5 * (*moved - *initial).norm_sq()).exp()
}

/// The printed oscillator fidelity at ω₀ = 1,
/// `exp[|c₀|²(−1 + cos t cos ωt) + 2(p_{y0} x₀ − p_{x0} y₀) sin t sin ωt]`.
pub fn fidelity_ho_printed(omega: f64, t: f64, c0: &PhasePoint) -> f64 {
    let angular = c0.py * c0.x - c0.px * c0.y;
    (c0.norm_sq() * (-1.0 + t.cos() * (omega * t).cos()) + 2.0 * angular * t.sin() * (omega * t).sin()).exp()
}

/// Oscillator flow with Ω replaced by 1 and λ/κ = 1, keeping the
/// rotation at ω. This is the trajectory the printed fidelity describes.
pub fn unit_oscillator_flow(omega: f64) -> Flow {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    Flow::Oscillator {
        freq: Frequencies {
            omega,
            lambda: half,
            kappa: half,
            big_omega: 1.0,
        },
    }
}

/// Tensor Hermite rule centred between two Gaussian centres; exact for the
/// overlap integrand of two unit Gaussians at any order ≥ 1.
pub fn overlap_scheme(a: &PhasePoint, b: &PhasePoint, order: usize) -> Result<QuadratureScheme> {
    let mid = (*a + *b) * 0.5;
    QuadratureScheme::hermite(order, &mid.to_array(), 1.0)
}

/// Which trajectory feeds the fidelity column used downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FidelityForm {
    /// The exact flow of the configured Hamiltonian.
    #[default]
    Consistent,
    /// The printed closed form (oscillator only).
    Printed,
}

/// One time sample of a fidelity run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelitySample {
    pub time: f64,
    pub closed: f64,
    pub quadrature: f64,
    /// Printed formula, oscillator only.
    pub printed: Option<f64>,
}

impl FidelitySample {
    /// One sample at time `t` along `flow`; `printed_omega` adds the printed
    /// column.
    pub fn compute(
        flow: &Flow,
        printed_omega: Option<f64>,
        initial: &PhasePoint,
        t: f64,
        order: usize,
    ) -> Result<Self> {
        let moved = flow.evolve(initial, t);
        let scheme = overlap_scheme(initial, &moved, order)?;
        let quadrature = fidelity_quadrature(&GaussianWigner::new(*initial), &GaussianWigner::new(moved), &scheme)?;
        Ok(FidelitySample {
            time: t,
            closed: fidelity_gaussian_closed(initial, &moved),
            quadrature,
            printed: printed_omega.map(|w| fidelity_ho_printed(w, t, initial)),
        })
    }

    pub fn difference(&self) -> f64 {
        (self.closed - self.quadrature).abs()
    }
}

/// Fidelity of a translated Gaussian against its evolved copy over a time
/// grid, by closed form and by quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityCurve {
    pub params: SystemParams,
    pub initial: PhasePoint,
    pub samples: Vec<FidelitySample>,
}

impl FidelityCurve {
    pub fn compute(params: SystemParams, initial: PhasePoint, grid: &TimeGrid, order: usize) -> Result<Self> {
        Self::compute_with(params, initial, grid, order, FidelityForm::Consistent)
    }

    /// As [`compute`](Self::compute); under [`FidelityForm::Printed`] the
    /// closed and quadrature columns follow [`unit_oscillator_flow`].
    pub fn compute_with(
        params: SystemParams,
        initial: PhasePoint,
        grid: &TimeGrid,
        order: usize,
        form: FidelityForm,
    ) -> Result<Self> {
        let flow = fidelity_flow(&params, form)?;
        let printed_omega = printed_column(&params);
        let samples = grid
            .samples()
            .into_iter()
            .map(|t| FidelitySample::compute(&flow, printed_omega, &initial, t, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(FidelityCurve {
            params,
            initial,
            samples,
        })
    }

    pub fn max_difference(&self) -> f64 {
        self.samples.iter().map(FidelitySample::difference).fold(0.0, f64::max)
    }
}

/// Coupling for the printed column; oscillator only.
pub fn printed_column(params: &SystemParams) -> Option<f64> {
    (params.kind() == SystemKind::HoField).then(|| params.coupling())
}

/// The trajectory a fidelity run follows under `form`.
pub fn fidelity_flow(params: &SystemParams, form: FidelityForm) -> Result<Flow> {
    Ok(match form {
        FidelityForm::Consistent => Flow::resolve(params),
        FidelityForm::Printed if params.kind() == SystemKind::HoField => unit_oscillator_flow(params.coupling()),
        FidelityForm::Printed => {
            return Err(Error::WrongSystem {
                operation: "printed fidelity form",
                kind: params.kind().name(),
            })
        }
    })
}

/// How the entropy integrand is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntropyConvention {
    /// The state as printed, over a fixed box.
    #[default]
    RawBox,
    /// The state rescaled to unit mass on the box first.
    NormalizedBox,
}

impl EntropyConvention {
    pub fn tag(self) -> &'static str {
        match self {
            EntropyConvention::RawBox => "RAW_BOX",
            EntropyConvention::NormalizedBox => "NORMALIZED_BOX",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyResult {
    /// Nats.
    pub value: f64,
    pub scheme: QuadratureScheme,
    pub convention: EntropyConvention,
}

fn require_box(scheme: &QuadratureScheme) -> Result<()> {
    match scheme {
        QuadratureScheme::UniformBox(_) => Ok(()),
        QuadratureScheme::TensorHermite(_) => Err(Error::invalid(
            "scheme",
            "entropy needs a uniform box: |W| ln |W| is not smooth enough for Gauss-Hermite",
        )),
    }
}

fn x_log_x(v: f64) -> f64 {
    let a = v.abs();
    if a < ENTROPY_FLOOR {
        0.0
    } else {
        a * a.ln()
    }
}

/// `−∫ |W| ln |W|` over a 4D box.
pub fn shannon_entropy<W>(state: &W, scheme: &QuadratureScheme, convention: EntropyConvention) -> Result<EntropyResult>
where
    W: WignerFunction + Sync,
{
    require_box(scheme)?;
    let eval = |z: &[f64]| state.value(&PhasePoint::from_slice(z));
    let raw = -try_integrate(|z| eval(z).map(x_log_x), 4, scheme)?;
    let value = match convention {
        EntropyConvention::RawBox => raw,
        EntropyConvention::NormalizedBox => {
            let mass = try_integrate(|z| eval(z).map(f64::abs), 4, scheme)?;
            normalized_from_raw(raw, mass)?
        }
    };
    Ok(EntropyResult {
        value,
        scheme: scheme.clone(),
        convention,
    })
}

/// With `Z = ∫|W|`, `−∫ (|W|/Z) ln(|W|/Z) = raw/Z + ln Z`.
fn normalized_from_raw(raw: f64, mass: f64) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(Error::Degenerate(format!("state has box mass {mass}")));
    }
    Ok(raw / mass + mass.ln())
}

/// `∫ a` and `∫ a ln a` for one Gaussian sector on a 2D box.
pub fn sector_moments(sector: &GaussianSector, scheme: &QuadratureScheme) -> Result<(f64, f64)> {
    require_box(scheme)?;
    if scheme.dims() != 2 {
        return Err(Error::invalid("scheme", "sector moments need a 2D box"));
    }
    let mass = try_integrate(|z| Ok(sector.value(z[0], z[1])), 2, scheme)?;
    let log = try_integrate(|z| Ok(sector.value_log_value(z[0], z[1])), 2, scheme)?;
    Ok((mass, log))
}

/// Entropy of a two-sector product state from 2D integrals only, using
/// `−∫ab ln(ab) = −(∫b)(∫a ln a) − (∫a)(∫b ln b)`.
pub fn separable_entropy(
    state: &SeparableGround,
    half_width: f64,
    nodes: usize,
    convention: EntropyConvention,
) -> Result<f64> {
    let scheme = QuadratureScheme::centered_box(2, half_width, nodes)?;
    let (za, ia) = sector_moments(&state.sectors[0], &scheme)?;
    let (zb, ib) = sector_moments(&state.sectors[1], &scheme)?;
    match convention {
        EntropyConvention::RawBox => Ok(-zb * ia - za * ib),
        EntropyConvention::NormalizedBox => Ok(normalized_from_raw(-ia, za)? + normalized_from_raw(-ib, zb)?),
    }
}

/// Box used by [`entropy_vs_field`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyBox {
    pub half_width: f64,
    /// Nodes per axis of each 2D sector grid.
    pub nodes: usize,
}

impl Default for EntropyBox {
    fn default() -> Self {
        EntropyBox {
            half_width: 8.0,
            nodes: 801,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPoint {
    pub field: f64,
    pub entropy: f64,
}

/// Ground-state entropy (printed prefactors, `𝒩 = 1`) against field
/// strength. The free ground state at zero field has no Landau form; its
/// raw entropy is reported as the limit 0.
pub fn entropy_vs_field(
    base: &SystemParams,
    fields: &[f64],
    domain: EntropyBox,
    convention: EntropyConvention,
) -> Result<Vec<EntropyPoint>> {
    if !matches!(base.kind(), SystemKind::HoField | SystemKind::FreeField) {
        return Err(Error::WrongSystem {
            operation: "entropy sweep",
            kind: base.kind().name(),
        });
    }
    fields
        .par_iter()
        .map(|&field| {
            let params = base.with_field(field)?;
            let ground = match params.kind() {
                SystemKind::HoField => StationaryHoState::ground(params)?.ground_sectors()?,
                _ => {
                    if params.coupling() == 0.0 {
                        return match convention {
                            EntropyConvention::RawBox => Ok(EntropyPoint { field, entropy: 0.0 }),
                            EntropyConvention::NormalizedBox => Err(Error::Degenerate(
                                "normalised free ground state collapses onto p = 0 at zero field".into(),
                            )),
                        };
                    }
                    LandauState::new(0, params)?.ground_sectors()?
                }
            };
            let entropy = separable_entropy(&ground, domain.half_width, domain.nodes, convention)?;
            Ok(EntropyPoint { field, entropy })
        })
        .collect()
}

/// Midpoint box over `[lower, upper]` per axis with `nodes` each.
pub fn box_scheme(bounds: &[(f64, f64)], nodes: usize) -> Result<QuadratureScheme> {
    QuadratureScheme::box_axes(bounds.iter().map(|&(a, b)| BoxAxis::new(a, b, nodes)).collect())
}
