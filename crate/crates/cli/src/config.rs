use std::path::PathBuf;

use catgame_core::{ClassFilter, Frequencies, Method, Model};
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

/// Simulate and map the classical and quantum three-food choice game.
#[derive(Parser, Debug, Clone)]
#[command(name = "catgame", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Strategy model: classical, quantum-pure or quantum-mixed.
    #[arg(long, global = true)]
    pub model: Option<Model>,

    /// Preference filter: any, intransitive-i, intransitive-ii, intransitive, transitive.
    #[arg(long, global = true)]
    pub filter: Option<ClassFilter>,

    /// Simplex grid resolution (steps per side).
    #[arg(long, global = true, default_value_t = 256)]
    pub grid: usize,

    /// Number of sampled strategies.
    #[arg(long = "n-samples", global = true, default_value_t = 100_000)]
    pub n_samples: u64,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Optimality tolerance used when re-verifying witnesses.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps: f64,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for grid and sampling work (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Sample strategies and write their coordinates and mapped frequencies.
    Sample,
    /// Measure region fractions of the frequency simplex.
    Area {
        /// oracle (exact per-cell decision) or forward (sampled images).
        #[arg(long, default_value = "oracle")]
        method: Method,
    },
    /// Draw the classical and quantum point clouds side by side.
    Figure {
        #[arg(long, value_enum, default_value_t = FigureKind::Optimal)]
        which: FigureKind,
    },
    /// Decide feasibility of one frequency triple.
    Check {
        /// Comma-separated `q0,q1,q2`.
        #[arg(long)]
        q: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Optimal,
    Intransitive,
    Transitive,
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub model: Option<Model>,
    pub filter: Option<ClassFilter>,
    pub grid: usize,
    pub n_samples: u64,
    pub seed: u64,
    pub eps: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let allowed: &[Format] = match cli.command {
            Command::Sample => &[Format::Csv, Format::Json],
            Command::Area { .. } => &[Format::Json, Format::Csv],
            Command::Figure { .. } => &[Format::Svg],
            Command::Check { .. } => &[Format::Json],
        };
        let format = cli.format.unwrap_or(allowed[0]);
        if !allowed.contains(&format) {
            let name = format.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
            return Err(CliError::Usage(format!("--format {name} is not supported by this command")));
        }
        if cli.grid < 1 {
            return Err(CliError::Usage("--grid must be at least 1".into()));
        }
        if cli.eps.is_nan() || cli.eps <= 0.0 {
            return Err(CliError::Usage("--eps must be positive".into()));
        }
        if let Command::Check { q } = &cli.command {
            parse_frequencies(q)?;
        }
        Ok(RunConfig {
            command: cli.command,
            model: cli.model,
            filter: cli.filter,
            grid: cli.grid,
            n_samples: cli.n_samples,
            seed: cli.seed,
            eps: cli.eps,
            out: cli.out,
            format,
            threads: cli.threads,
        })
    }
}

/// Parses `q0,q1,q2`; the sum must be one within `1e-9`.
pub fn parse_frequencies(s: &str) -> Result<Frequencies, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("--q expects three comma-separated probabilities summing to 1, got `{s}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| bad())?;
    }
    Frequencies::with_tolerance(v[0], v[1], v[2], 1e-9).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_q() {
        let q = parse_frequencies("0.2, 0.3,0.5").unwrap();
        assert_eq!(q.to_array(), [0.2, 0.3, 0.5]);
        assert!(parse_frequencies("0.2,0.3").is_err());
        assert!(parse_frequencies("0.2,0.3,0.6").is_err());
        assert!(parse_frequencies("a,b,c").is_err());
    }

    #[test]
    fn rejects_unsupported_format() {
        let cli = Cli::try_parse_from(["catgame", "figure", "--format", "csv"]).unwrap();
        assert!(matches!(RunConfig::from_cli(cli), Err(CliError::Usage(_))));
        let cli = Cli::try_parse_from(["catgame", "sample"]).unwrap();
        assert_eq!(RunConfig::from_cli(cli).unwrap().format, Format::Csv);
    }
}
