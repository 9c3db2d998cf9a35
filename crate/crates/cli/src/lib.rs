//! Command-line front end for the `secrecy-core` library.

pub mod args;
pub mod error;
pub mod eval;
pub mod figures;
pub mod format;
pub mod seed;
pub mod sweep;
pub mod verify;

use args::{Cli, Command};
use error::Result;

/// Runs one parsed command, printing its result to stdout.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Eval(a) => {
            let record = eval::evaluate(a)?;
            println!("{record}");
            Ok(())
        }
        Command::Sweep(a) => sweep::cmd_sweep(a),
        Command::Verify(a) => verify::cmd_verify(a),
        Command::Figures(a) => figures::cmd_figures(a),
    }
}
