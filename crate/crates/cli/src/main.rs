use std::process::ExitCode;

use clap::Parser;
use wigfid_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wigfid: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
