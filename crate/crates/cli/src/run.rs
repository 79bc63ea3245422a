//! The five experiments, each producing one [`Table`].

use rayon::prelude::*;

use wigfid::dynamics::TrajectorySolution;
use wigfid::measures::{
    entropy_vs_field, fidelity_flow, printed_column, EntropyBox, EntropyConvention, FidelityForm, FidelitySample,
};
use wigfid::model::hamiltonian_value;
use wigfid::ncmap::{auxiliary_s, map_system, sigma_invertible, NcParams};
use wigfid::wigner::{gqw_energy, ho_energy, landau_energy};
use wigfid::SystemParams;

use crate::config::{RunConfig, SystemChoice};
use crate::error::CliError;
use crate::output::{format_number, Cell, Table};

/// Subcommand selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Fidelity,
    Entropy,
    Trajectory,
    Spectrum,
    Ncmap,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fidelity => "fidelity",
            Experiment::Entropy => "entropy",
            Experiment::Trajectory => "trajectory",
            Experiment::Spectrum => "spectrum",
            Experiment::Ncmap => "ncmap",
        }
    }
}

/// Runs `experiment` and attaches the resolved configuration and sign
/// conventions as metadata.
pub fn run(experiment: Experiment, cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = match experiment {
        Experiment::Fidelity => run_fidelity(cfg),
        Experiment::Entropy => run_entropy(cfg),
        Experiment::Trajectory => run_trajectory(cfg),
        Experiment::Spectrum => run_spectrum(cfg),
        Experiment::Ncmap => run_ncmap(cfg),
    }?;
    table.metadata = metadata(experiment, cfg);
    Ok(table)
}

fn metadata(experiment: Experiment, cfg: &RunConfig) -> Vec<(String, String)> {
    let mut meta = vec![("experiment".to_string(), experiment.name().to_string())];
    meta.extend(cfg.resolved().into_iter().map(|(k, v)| (k.to_string(), v)));
    meta.push((
        "epsilon_12".into(),
        "+1, coupling term w (px y - py x) with w = q B0 / 2m".into(),
    ));
    meta.push(("entropy_convention_tag".into(), cfg.entropy_convention.tag().into()));
    meta.push((
        "fidelity_variant".into(),
        match cfg.fidelity_form {
            FidelityForm::Consistent => "exact flow at Omega = sqrt(w^2 + w0^2)".into(),
            FidelityForm::Printed => "printed oscillator form, Omega -> 1 and lambda/kappa = 1".into(),
        },
    ));
    meta
}

fn params_at(cfg: &RunConfig, b0: f64) -> Result<SystemParams, CliError> {
    cfg.params(b0)
        .map_err(|e| CliError::from_core(format!("B0 = {}", format_number(b0)), e))
}

/// Rows `(B0, τ, F_closed, F_quad, F_printed, |Δ|)` ordered by field then time;
/// `F_printed` is empty outside the oscillator.
pub fn run_fidelity(cfg: &RunConfig) -> Result<Table, CliError> {
    let times = cfg.time.samples();
    let blocks = cfg
        .b0
        .par_iter()
        .map(|&b0| {
            let params = params_at(cfg, b0)?;
            let flow = fidelity_flow(&params, cfg.fidelity_form)
                .map_err(|e| CliError::from_core(format!("B0 = {}", format_number(b0)), e))?;
            let printed = printed_column(&params);
            times
                .iter()
                .map(|&t| {
                    let s = FidelitySample::compute(&flow, printed, &cfg.initial, t, cfg.quad_order).map_err(|e| {
                        CliError::from_core(format!("B0 = {}, tau = {}", format_number(b0), format_number(t)), e)
                    })?;
                    Ok(vec![
                        Cell::Num(b0),
                        Cell::Num(t),
                        Cell::Num(s.closed),
                        Cell::Num(s.quadrature),
                        s.printed.map_or(Cell::Empty, Cell::Num),
                        Cell::Num(s.difference()),
                    ])
                })
                .collect::<Result<Vec<_>, CliError>>()
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(vec!["B0", "τ", "F_closed", "F_quad", "F_printed", "abs_diff"]);
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

/// Ground-state entropy of the configured oscillator or free particle
/// against field strength.
pub fn run_entropy(cfg: &RunConfig) -> Result<Table, CliError> {
    if !matches!(cfg.system, SystemChoice::Ho | SystemChoice::Free) {
        return Err(CliError::Range {
            at: "system".into(),
            message: format!("entropy sweeps need `ho` or `free`, got `{}`", cfg.system.name()),
        });
    }
    let base = params_at(cfg, 0.0)?;
    let domain = EntropyBox {
        half_width: cfg.box_half_width,
        ..EntropyBox::default()
    };
    let points = entropy_vs_field(&base, &cfg.b0, domain, cfg.entropy_convention)
        .map_err(|e| CliError::from_core("entropy sweep", e))?;
    let mut table = Table::new(vec!["system", "B0", "entropy", "convention"]);
    let tag = EntropyConvention::tag(cfg.entropy_convention);
    table.rows = points
        .into_iter()
        .map(|p| {
            vec![
                Cell::Text(base.kind().name().into()),
                Cell::Num(p.field),
                Cell::Num(p.entropy),
                Cell::Text(tag.into()),
            ]
        })
        .collect();
    Ok(table)
}

/// Phase-space trajectory and energy for every field and time sample.
pub fn run_trajectory(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["B0", "τ", "x", "y", "px", "py", "energy"]);
    for &b0 in &cfg.b0 {
        let params = params_at(cfg, b0)?;
        let solution = TrajectorySolution::new(params, cfg.initial);
        for t in cfg.time.samples() {
            let z = solution.at(t);
            if !z.is_finite() {
                return Err(CliError::Numerical {
                    at: format!("B0 = {}, tau = {}", format_number(b0), format_number(t)),
                    source: wigfid::Error::Degenerate(format!("trajectory left the finite range: {z:?}")),
                });
            }
            table.rows.push(vec![
                Cell::Num(b0),
                Cell::Num(t),
                Cell::Num(z.x),
                Cell::Num(z.y),
                Cell::Num(z.px),
                Cell::Num(z.py),
                Cell::Num(hamiltonian_value(&params, &z)),
            ]);
        }
    }
    Ok(table)
}

/// Energy levels up to `levels`: `E_{n1,n2}` for the oscillator, `E_n`
/// for Landau levels, `E_{n_y}` (from 1) for the well.
pub fn run_spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["B0", "n1", "n2", "energy"]);
    let top = cfg.levels as u64;
    for &b0 in &cfg.b0 {
        let params = params_at(cfg, b0)?;
        let at = |n: u64| format!("B0 = {}, n = {n}", format_number(b0));
        match cfg.system {
            SystemChoice::Ho => {
                for n1 in 0..=top {
                    for n2 in 0..=top {
                        let e =
                            ho_energy(n1 as usize, n2 as usize, &params).map_err(|e| CliError::from_core(at(n1), e))?;
                        table
                            .rows
                            .push(vec![Cell::Num(b0), Cell::Int(n1), Cell::Int(n2), Cell::Num(e)]);
                    }
                }
            }
            SystemChoice::Free => {
                for n in 0..=top {
                    let e = landau_energy(n as usize, &params).map_err(|e| CliError::from_core(at(n), e))?;
                    table
                        .rows
                        .push(vec![Cell::Num(b0), Cell::Int(n), Cell::Empty, Cell::Num(e)]);
                }
            }
            SystemChoice::Gqw | SystemChoice::GqwB => {
                for n in 1..=top {
                    let e = gqw_energy(n as usize, &params).map_err(|e| CliError::from_core(at(n), e))?;
                    table
                        .rows
                        .push(vec![Cell::Num(b0), Cell::Int(n), Cell::Empty, Cell::Num(e)]);
                }
            }
        }
    }
    Ok(table)
}

/// `(θ, η, μ, ν) → (B0, s, invertible)` over the product of the four lists,
/// θ outermost.
pub fn run_ncmap(cfg: &RunConfig) -> Result<Table, CliError> {
    let base = params_at(cfg, 0.0)?;
    let mut table = Table::new(vec![
        "theta",
        "eta",
        "mu",
        "nu",
        "system",
        "B0",
        "s",
        "invertible",
        "x_scale",
        "x_shear",
    ]);
    for &theta in &cfg.theta {
        for &eta in &cfg.eta {
            for &mu in &cfg.mu {
                for &nu in &cfg.nu {
                    let at = format!(
                        "theta = {}, eta = {}, mu = {}, nu = {}",
                        format_number(theta),
                        format_number(eta),
                        format_number(mu),
                        format_number(nu)
                    );
                    let nc = NcParams::new(theta, eta, mu, nu).map_err(|e| CliError::from_core(at.clone(), e))?;
                    let mapped = map_system(&nc, &base).map_err(|e| CliError::from_core(at.clone(), e))?;
                    let s = auxiliary_s(mu, nu).map_err(|e| CliError::from_core(at.clone(), e))?;
                    table.rows.push(vec![
                        Cell::Num(theta),
                        Cell::Num(eta),
                        Cell::Num(mu),
                        Cell::Num(nu),
                        Cell::Text(mapped.params.kind().name().into()),
                        Cell::Num(mapped.params.field()),
                        Cell::Num(s),
                        Cell::Bool(sigma_invertible(&nc, cfg.hbar)),
                        Cell::Num(mapped.shift.scale),
                        Cell::Num(mapped.shift.shear),
                    ]);
                }
            }
        }
    }
    Ok(table)
}
