//! Run configuration: defaults, `key = value` files and flag overrides.
//!
//! Precedence is flags over file over defaults. Every value passes through
//! the same string parser whatever its source, so an error names the flag
//! or the file line it came from.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use wigfid::measures::{EntropyConvention, FidelityForm};
use wigfid::ncmap::NcParams;
use wigfid::specfun::MAX_HERMITE_ORDER;
use wigfid::{PhasePoint, SystemKind, SystemParams, TimeGrid};

use crate::error::CliError;

/// Recognised keys; identical to the long flag names.
pub const KEYS: &[&str] = &[
    "system",
    "b0",
    "omega0",
    "mass",
    "hbar",
    "charge",
    "gravity",
    "x0",
    "y0",
    "px0",
    "py0",
    "t-start",
    "t-end",
    "t-steps",
    "quad-order",
    "box-half-width",
    "entropy-convention",
    "fidelity-form",
    "format",
    "out",
    "levels",
    "theta",
    "eta",
    "mu",
    "nu",
];

/// Where a setting came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Default,
    Flag,
    Line(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Setting {
    value: String,
    origin: Origin,
}

/// Raw, unvalidated key/value pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    entries: BTreeMap<&'static str, Setting>,
}

fn known_key(key: &str) -> Option<&'static str> {
    KEYS.iter().copied().find(|k| *k == key)
}

impl Settings {
    /// Parses flat `key = value` text. Blank lines and lines starting with
    /// `#` are skipped; unknown and repeated keys are errors.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut settings = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = format!("line {n}");
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Parse {
                at: at.clone(),
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let key = known_key(key).ok_or_else(|| CliError::Parse {
                at: at.clone(),
                message: format!("unknown key `{key}`"),
            })?;
            if settings.entries.contains_key(key) {
                return Err(CliError::Parse {
                    at,
                    message: format!("key `{key}` repeated"),
                });
            }
            settings.entries.insert(
                key,
                Setting {
                    value: value.trim().to_string(),
                    origin: Origin::Line(n),
                },
            );
        }
        Ok(settings)
    }

    /// Records a command-line value. Panics on a key outside [`KEYS`].
    pub fn set_flag(&mut self, key: &str, value: impl Into<String>) {
        let key = known_key(key).unwrap_or_else(|| panic!("`{key}` is not a configuration key"));
        self.entries.insert(
            key,
            Setting {
                value: value.into(),
                origin: Origin::Flag,
            },
        );
    }

    /// `self` with every entry of `higher` taking precedence.
    pub fn overlay(mut self, higher: Settings) -> Settings {
        self.entries.extend(higher.entries);
        self
    }

    fn origin(&self, key: &str) -> Origin {
        self.entries.get(key).map_or(Origin::Default, |s| s.origin.clone())
    }

    fn at(&self, key: &str) -> String {
        match self.origin(key) {
            Origin::Default => format!("default `{key}`"),
            Origin::Flag => format!("--{key}"),
            Origin::Line(n) => format!("line {n} (`{key}`)"),
        }
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.value.as_str())
    }

    fn scalar<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::Parse {
                at: self.at(key),
                message: format!("cannot read `{v}` as a {}", type_label::<T>()),
            }),
        }
    }

    fn list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        let Some(v) = self.raw(key) else {
            return Ok(default.to_vec());
        };
        let items = v
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>().map_err(|_| CliError::Parse {
                    at: self.at(key),
                    message: format!("cannot read `{s}` as a number"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if items.is_empty() {
            return Err(self.range(key, "list must not be empty"));
        }
        Ok(items)
    }

    fn choice<T: Copy>(&self, key: &str, options: &[(&str, T)], default: T) -> Result<T, CliError> {
        let Some(v) = self.raw(key) else {
            return Ok(default);
        };
        options
            .iter()
            .find(|(name, _)| *name == v)
            .map(|(_, t)| *t)
            .ok_or_else(|| {
                let names: Vec<_> = options.iter().map(|(n, _)| *n).collect();
                CliError::Parse {
                    at: self.at(key),
                    message: format!("`{v}` is not one of {}", names.join("|")),
                }
            })
    }

    fn range(&self, key: &str, message: impl Into<String>) -> CliError {
        CliError::Range {
            at: self.at(key),
            message: message.into(),
        }
    }
}

fn type_label<T>() -> &'static str {
    let name = std::any::type_name::<T>();
    if name.contains("f64") {
        "number"
    } else if name.contains("usize") {
        "non-negative integer"
    } else {
        "value"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemChoice {
    Ho,
    Free,
    /// Gravitational well without field.
    Gqw,
    /// Gravitational well in a field.
    GqwB,
}

impl SystemChoice {
    const OPTIONS: [(&'static str, SystemChoice); 4] = [
        ("ho", SystemChoice::Ho),
        ("free", SystemChoice::Free),
        ("gqw", SystemChoice::Gqw),
        ("gqw-b", SystemChoice::GqwB),
    ];

    pub fn name(self) -> &'static str {
        Self::OPTIONS
            .iter()
            .find(|(_, c)| *c == self)
            .map(|(n, _)| *n)
            .unwrap_or("?")
    }

    pub fn kind(self) -> SystemKind {
        match self {
            SystemChoice::Ho => SystemKind::HoField,
            SystemChoice::Free => SystemKind::FreeField,
            SystemChoice::Gqw => SystemKind::GqwBallistic,
            SystemChoice::GqwB => SystemKind::GqwField,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully validated settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: SystemChoice,
    pub b0: Vec<f64>,
    pub omega0: f64,
    pub mass: f64,
    pub hbar: f64,
    pub charge: f64,
    pub gravity: f64,
    pub initial: PhasePoint,
    pub time: TimeGrid,
    pub quad_order: usize,
    pub box_half_width: f64,
    pub entropy_convention: EntropyConvention,
    pub fidelity_form: FidelityForm,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Highest quantum number in spectrum tables.
    pub levels: usize,
    pub theta: Vec<f64>,
    pub eta: Vec<f64>,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
}

const FIELD_DEFAULTS: [f64; 4] = [0.0, 0.1, 0.5, 1.0];

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(&Settings::default()).expect("defaults are valid")
    }
}

impl RunConfig {
    pub fn resolve(s: &Settings) -> Result<Self, CliError> {
        let system = s.choice("system", &SystemChoice::OPTIONS, SystemChoice::Ho)?;
        let b0_default: &[f64] = if system == SystemChoice::Gqw {
            &[0.0]
        } else {
            &FIELD_DEFAULTS
        };
        let (t_start, t_end, t_steps) = (
            s.scalar("t-start", 0.0)?,
            s.scalar("t-end", 20.0)?,
            s.scalar("t-steps", 201usize)?,
        );
        let time = TimeGrid::new(t_start, t_end, t_steps).map_err(|e| s.range("t-steps", e.to_string()))?;
        let cfg = RunConfig {
            system,
            b0: s.list("b0", b0_default)?,
            omega0: s.scalar("omega0", 1.0)?,
            mass: s.scalar("mass", 1.0)?,
            hbar: s.scalar("hbar", 1.0)?,
            charge: s.scalar("charge", 1.0)?,
            gravity: s.scalar("gravity", 2.0)?,
            initial: PhasePoint::new(
                s.scalar("x0", 1.0)?,
                s.scalar("y0", 1.0)?,
                s.scalar("px0", 1.0)?,
                s.scalar("py0", 1.0)?,
            ),
            time,
            quad_order: s.scalar("quad-order", 32usize)?,
            box_half_width: s.scalar("box-half-width", 8.0)?,
            entropy_convention: s.choice(
                "entropy-convention",
                &[
                    ("raw", EntropyConvention::RawBox),
                    ("normalized", EntropyConvention::NormalizedBox),
                ],
                EntropyConvention::RawBox,
            )?,
            fidelity_form: s.choice(
                "fidelity-form",
                &[
                    ("consistent", FidelityForm::Consistent),
                    ("paper", FidelityForm::Printed),
                ],
                FidelityForm::Consistent,
            )?,
            format: s.choice(
                "format",
                &[("csv", OutputFormat::Csv), ("json", OutputFormat::Json)],
                OutputFormat::Csv,
            )?,
            out: s.raw("out").filter(|v| !v.is_empty() && *v != "-").map(PathBuf::from),
            levels: s.scalar("levels", 5usize)?,
            theta: s.list("theta", &[0.0, 0.5, 1.0])?,
            eta: s.list("eta", &[0.5])?,
            mu: s.list("mu", &[2.0])?,
            nu: s.list("nu", &[0.25])?,
        };
        cfg.validate(s)?;
        Ok(cfg)
    }

    fn validate(&self, s: &Settings) -> Result<(), CliError> {
        if !self.initial.is_finite() {
            return Err(s.range("x0", "initial point must be finite"));
        }
        if !(1..=MAX_HERMITE_ORDER).contains(&self.quad_order) {
            return Err(s.range("quad-order", format!("must be in 1..={MAX_HERMITE_ORDER}")));
        }
        if !(self.box_half_width > 0.0 && self.box_half_width.is_finite()) {
            return Err(s.range("box-half-width", "must be positive and finite"));
        }
        if self.levels == 0 {
            return Err(s.range("levels", "must be at least 1"));
        }
        for &b in &self.b0 {
            self.params(b).map_err(|e| match e {
                wigfid::Error::InvalidParameter { name, reason } => {
                    let key = if name == "field" { "b0" } else { name };
                    s.range(key, format!("{key}: {reason}"))
                }
                other => s.range("system", other.to_string()),
            })?;
        }
        for (key, values) in [
            ("theta", &self.theta),
            ("eta", &self.eta),
            ("mu", &self.mu),
            ("nu", &self.nu),
        ] {
            for &v in values.iter() {
                let probe = match key {
                    "theta" => NcParams::new(v, 0.0, 1.0, 1.0),
                    "eta" => NcParams::new(0.0, v, 1.0, 1.0),
                    "mu" => NcParams::new(0.0, 0.0, v, 1.0),
                    _ => NcParams::new(0.0, 0.0, 1.0, v),
                };
                probe.map_err(|e| s.range(key, e.to_string()))?;
            }
        }
        Ok(())
    }

    /// Physical parameters at field strength `b0`. The trap frequency and
    /// gravity only enter the systems that carry them.
    pub fn params(&self, b0: f64) -> Result<SystemParams, wigfid::Error> {
        let kind = self.system.kind();
        let omega0 = if kind == SystemKind::HoField { self.omega0 } else { 0.0 };
        let gravity = if kind.is_gravitational() { self.gravity } else { 0.0 };
        SystemParams::new(kind, self.mass, self.hbar, self.charge, b0, omega0, gravity)
    }

    /// Every key with its resolved value, in [`KEYS`] order.
    pub fn resolved(&self) -> Vec<(&'static str, String)> {
        let list = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        let z = self.initial;
        KEYS.iter()
            .map(|&k| {
                let v = match k {
                    "system" => self.system.name().to_string(),
                    "b0" => list(&self.b0),
                    "omega0" => self.omega0.to_string(),
                    "mass" => self.mass.to_string(),
                    "hbar" => self.hbar.to_string(),
                    "charge" => self.charge.to_string(),
                    "gravity" => self.gravity.to_string(),
                    "x0" => z.x.to_string(),
                    "y0" => z.y.to_string(),
                    "px0" => z.px.to_string(),
                    "py0" => z.py.to_string(),
                    "t-start" => self.time.t_start().to_string(),
                    "t-end" => self.time.t_end().to_string(),
                    "t-steps" => self.time.len().to_string(),
                    "quad-order" => self.quad_order.to_string(),
                    "box-half-width" => self.box_half_width.to_string(),
                    "entropy-convention" => match self.entropy_convention {
                        EntropyConvention::RawBox => "raw".into(),
                        EntropyConvention::NormalizedBox => "normalized".into(),
                    },
                    "fidelity-form" => match self.fidelity_form {
                        FidelityForm::Consistent => "consistent".into(),
                        FidelityForm::Printed => "paper".into(),
                    },
                    "format" => match self.format {
                        OutputFormat::Csv => "csv".into(),
                        OutputFormat::Json => "json".into(),
                    },
                    "out" => self.out.as_ref().map_or("-".into(), |p| p.display().to_string()),
                    "levels" => self.levels.to_string(),
                    "theta" => list(&self.theta),
                    "eta" => list(&self.eta),
                    "mu" => list(&self.mu),
                    "nu" => list(&self.nu),
                    _ => unreachable!("every key is listed"),
                };
                (k, v)
            })
            .collect()
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.resolved() {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}
