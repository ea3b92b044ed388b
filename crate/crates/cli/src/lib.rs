//! Command-line driver for `peterweyl-core`: argument parsing, the run
//! configuration echoed into every output directory, file formats, and the
//! `transform`, `classify`, `factorize` and `verify` subcommands.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;

pub use args::Cli;
pub use config::RunConfig;
pub use error::{CliError, CliResult};

/// Resolves the configuration for a parsed command line and runs it.
pub fn run(cli: &Cli) -> CliResult<()> {
    let config = RunConfig::from_command(&cli.command)?;
    commands::execute(&config)
}
