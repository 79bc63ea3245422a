//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Settings;
use crate::run::Experiment;

#[derive(Debug, Parser)]
#[command(
    name = "wigfid",
    version,
    about = "Fidelity, entropy, trajectory, spectrum and noncommutative-map tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gaussian fidelity against time for each field strength.
    Fidelity(Flags),
    /// Ground-state phase-space entropy against field strength.
    Entropy(Flags),
    /// Classical phase-space trajectory of the Gaussian centre.
    Trajectory(Flags),
    /// Energy levels.
    Spectrum(Flags),
    /// Effective field of noncommutative parameters.
    Ncmap(Flags),
}

impl Command {
    pub fn split(&self) -> (Experiment, &Flags) {
        match self {
            Command::Fidelity(f) => (Experiment::Fidelity, f),
            Command::Entropy(f) => (Experiment::Entropy, f),
            Command::Trajectory(f) => (Experiment::Trajectory, f),
            Command::Spectrum(f) => (Experiment::Spectrum, f),
            Command::Ncmap(f) => (Experiment::Ncmap, f),
        }
    }
}

/// Every flag is read as text and validated with the config file keys.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Flat `key = value` file; flags given here override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// ho | free | gqw | gqw-b
    #[arg(long)]
    pub system: Option<String>,
    /// Comma-separated field strengths.
    #[arg(long, allow_hyphen_values = true)]
    pub b0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mass: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gravity: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub px0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub py0: Option<String>,
    #[arg(long = "t-start", allow_hyphen_values = true)]
    pub t_start: Option<String>,
    #[arg(long = "t-end", allow_hyphen_values = true)]
    pub t_end: Option<String>,
    /// Number of time samples, endpoints included.
    #[arg(long = "t-steps", allow_hyphen_values = true)]
    pub t_steps: Option<String>,
    /// Gauss-Hermite nodes per axis.
    #[arg(long = "quad-order", allow_hyphen_values = true)]
    pub quad_order: Option<String>,
    #[arg(long = "box-half-width", allow_hyphen_values = true)]
    pub box_half_width: Option<String>,
    /// raw | normalized
    #[arg(long = "entropy-convention")]
    pub entropy_convention: Option<String>,
    /// consistent | paper
    #[arg(long = "fidelity-form")]
    pub fidelity_form: Option<String>,
    /// csv | json
    #[arg(long)]
    pub format: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<String>,
    /// Highest quantum number in spectrum tables.
    #[arg(long, allow_hyphen_values = true)]
    pub levels: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
}

impl Flags {
    /// The flags that were given, as settings.
    pub fn settings(&self) -> Settings {
        let mut s = Settings::default();
        let given = [
            ("system", &self.system),
            ("b0", &self.b0),
            ("omega0", &self.omega0),
            ("mass", &self.mass),
            ("hbar", &self.hbar),
            ("charge", &self.charge),
            ("gravity", &self.gravity),
            ("x0", &self.x0),
            ("y0", &self.y0),
            ("px0", &self.px0),
            ("py0", &self.py0),
            ("t-start", &self.t_start),
            ("t-end", &self.t_end),
            ("t-steps", &self.t_steps),
            ("quad-order", &self.quad_order),
            ("box-half-width", &self.box_half_width),
            ("entropy-convention", &self.entropy_convention),
            ("fidelity-form", &self.fidelity_form),
            ("format", &self.format),
            ("out", &self.out),
            ("levels", &self.levels),
            ("theta", &self.theta),
            ("eta", &self.eta),
            ("mu", &self.mu),
            ("nu", &self.nu),
        ];
        for (key, value) in given {
            if let Some(v) = value {
                s.set_flag(key, v.clone());
            }
        }
        s
    }
}
