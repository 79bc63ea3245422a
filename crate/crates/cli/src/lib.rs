//! Command-line front end of `wigfid`: resolves a run configuration from
//! defaults, an optional config file and flags, runs one experiment and
//! writes a CSV or JSON table.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod run;

use std::fs;

pub use args::{Cli, Command, Flags};
pub use config::{OutputFormat, RunConfig, Settings, SystemChoice};
pub use error::CliError;
pub use output::{Cell, Table};
pub use run::{run, Experiment};

/// Flags over file over defaults.
pub fn resolve(flags: &Flags) -> Result<RunConfig, CliError> {
    let file = match &flags.config {
        None => Settings::default(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Parse {
                at: path.display().to_string(),
                message: format!("cannot read config file: {e}"),
            })?;
            Settings::from_text(&text)?
        }
    };
    RunConfig::resolve(&file.overlay(flags.settings()))
}

/// The serialised table for `command`.
pub fn render(command: &Command) -> Result<(RunConfig, String), CliError> {
    let (experiment, flags) = command.split();
    let cfg = resolve(flags)?;
    let table = run(experiment, &cfg)?;
    let text = match cfg.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    };
    Ok((cfg, text))
}

/// Runs `command` and writes to `--out` or standard output.
pub fn execute(command: &Command) -> Result<(), CliError> {
    let (cfg, text) = render(command)?;
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io {
                path: "stdout".into(),
                message: e.to_string(),
            })
        }
    }
}
