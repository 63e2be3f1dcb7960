//! Command-line front end.
//!
//! ```text
//! svw evolve  --n <int> --m <int> --tau-max <real> --steps <int> --out <path> [--svg]
//! svw maxima  --n-min <int> --n-max <int> --out <path>
//! svw verify  --n-max <int> [--m <int>]
//! svw figures --out-dir <path>
//! ```
//!
//! Exit codes: 0 success, 1 runtime or numeric failure, 2 usage error.
//! Set `SVW_THREADS` to bound the worker pool.

mod commands;
mod config;
mod format;
mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_evolve, cmd_figures, cmd_maxima, cmd_verify, evolve_table, fig1_data, fig1_table,
    fig2_data, fig2_table, fig3_data, maxima_table, verify_models, verify_samples, Fig1Curve,
    Fig2Curve, VerifySummary, FIG1_N, FIG1_POINTS, FIG2_N, FIG2_POINTS, FIG3_N,
};
pub use config::{linspace, Command, OutputFormat, Overrides, RunConfig};
pub use format::{format_sig, num, CsvTable, SIGNIFICANT_DIGITS};
pub use svg::{LinePlot, Series};

use crate::error::Error;

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "SVW_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Runtime(#[from] Error),
    /// The run completed but a check did not pass.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) | CliError::Failed(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "svw",
    version,
    about = "Entanglement dynamics of equivalent-neighbor XY spin systems"
)]
pub struct Cli {
    /// Optional `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Schmidt spectrum and entropy on a time grid.
    Evolve(EvolveArgs),
    /// Maximal single-excitation entanglement for a range of N.
    Maxima(MaximaArgs),
    /// Cross-check the closed form against exact diagonalization.
    Verify(VerifyArgs),
    /// Data (and optionally SVG plots) for the three standard figures.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Dimensionless end time kappa * t.
    #[arg(long, conflicts_with = "t_max")]
    pub tau_max: Option<f64>,
    /// Physical end time, converted with --kappa.
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot next to the CSV.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct MaximaArgs {
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Check only this M; all M <= N/2 otherwise.
    #[arg(long)]
    pub m: Option<usize>,
    /// Random times per model.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub svg: bool,
}

fn flag(set: bool) -> Option<bool> {
    set.then_some(true)
}

impl CliCommand {
    fn split(self) -> (Command, Overrides) {
        match self {
            CliCommand::Evolve(a) => (
                Command::Evolve,
                Overrides {
                    n_total: a.n,
                    m_excited: a.m,
                    tau_max: a.tau_max,
                    t_max: a.t_max,
                    kappa: a.kappa,
                    steps: a.steps,
                    output_path: a.out,
                    svg: flag(a.svg),
                    ..Default::default()
                },
            ),
            CliCommand::Maxima(a) => (
                Command::Maxima,
                Overrides {
                    n_min: a.n_min,
                    n_max: a.n_max,
                    m_excited: a.m,
                    output_path: a.out,
                    svg: flag(a.svg),
                    ..Default::default()
                },
            ),
            CliCommand::Verify(a) => (
                Command::Verify,
                Overrides {
                    n_min: a.n_min,
                    n_max: a.n_max,
                    m_excited: a.m,
                    samples: a.samples,
                    seed: a.seed,
                    output_path: a.out,
                    ..Default::default()
                },
            ),
            CliCommand::Figures(a) => (
                Command::Figures,
                Overrides {
                    output_path: a.out_dir,
                    svg: flag(a.svg),
                    ..Default::default()
                },
            ),
        }
    }
}

/// Resolves flags, config file and defaults into a [`RunConfig`].
pub fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(path) => Overrides::load(path)?,
        None => Overrides::default(),
    };
    let (command, flags) = cli.command.split();
    RunConfig::resolve(command, flags.or(file))
}

/// Runs one resolved command, returning the text to print on success.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.command {
        Command::Evolve => {
            let files = cmd_evolve(cfg)?;
            Ok(files
                .iter()
                .map(|p| format!("wrote {}\n", p.display()))
                .collect())
        }
        Command::Maxima => {
            cmd_maxima(cfg)?;
            Ok(format!("wrote {}\n", cfg.output_path.display()))
        }
        Command::Verify => {
            let summary = cmd_verify(cfg)?;
            let text = summary.render();
            if summary.passed() {
                Ok(text)
            } else {
                Err(CliError::Failed(text))
            }
        }
        Command::Figures => {
            let files = cmd_figures(cfg)?;
            Ok(files
                .iter()
                .map(|p| format!("wrote {}\n", p.display()))
                .collect())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    // A pool may already exist when embedded; the first configuration wins.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// Full entry point: parses `args`, runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = configure_threads()
        .and_then(|_| resolve(cli))
        .and_then(|cfg| execute(&cfg));
    match result {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(CliError::Failed(text)) => {
            print!("{text}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
