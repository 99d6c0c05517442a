//! Command implementations behind the `catgame` binary. Each command renders
//! its whole output in memory, so a run is a pure function of its config.

pub mod commands;
pub mod config;
pub mod error;
pub mod svg;

use std::io::Write;

pub use config::{Cli, Command, FigureKind, Format, RunConfig};
pub use error::CliError;

/// Renders the output of `config` on a pool of `config.threads` workers.
pub fn render(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", config.threads)))?;
    pool.install(|| match &config.command {
        Command::Sample => commands::sample::render(config),
        Command::Area { method } => commands::area::render(config, *method),
        Command::Figure { which } => commands::figure::render(config, *which),
        Command::Check { q } => commands::check::render(config, q),
    })
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let bytes = render(config)?;
    match &config.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}
