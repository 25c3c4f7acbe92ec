//! `vdw`: sweeps, closed-form limits and the acceptance suite from the
//! command line.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 numerical failure
//! (including failed sweep rows), 3 validation failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

mod commands;
mod config;
mod table;

use commands::LimitCase;
use config::{Format, Overrides, ScenarioConfig, Spacing};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0} of 12 validation criteria failed")]
    Validation(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vdw",
    version,
    about = "Two-atom van der Waals potentials and forces"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// JSON scenario file; flags below override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, value_name = "R")]
    rel_tol: Option<f64>,
    /// Number of sweep points.
    #[arg(long, global = true, value_name = "N")]
    points: Option<usize>,
    /// Logarithmic sweep spacing.
    #[arg(long, global = true, conflicts_with = "linear")]
    log: bool,
    /// Linear sweep spacing.
    #[arg(long, global = true)]
    linear: bool,
    /// Output file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Free-space potential, its power-law asymptotes and the radial force.
    FreeSpace,
    /// Potential decomposition, ratio and forces above a half space.
    HalfSpace,
    /// Closed-form limits and thresholds.
    Limits {
        #[arg(value_enum, default_value = "all")]
        case: LimitCase,
    },
    /// Height ratios at which the plate correction changes sign.
    Thresholds,
    /// Runs the twelve acceptance criteria.
    Validate,
}

fn overrides(g: &GlobalArgs) -> Overrides {
    Overrides {
        rel_tol: g.rel_tol,
        points: g.points,
        spacing: if g.log {
            Some(Spacing::Log)
        } else if g.linear {
            Some(Spacing::Linear)
        } else {
            None
        },
        output: g.output.clone(),
        format: g.format,
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.global.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    cfg.apply(&overrides(&cli.global));
    let (table, report) = match cli.command {
        Command::FreeSpace => (commands::free_space(&cfg)?, None),
        Command::HalfSpace => (commands::half_space(&cfg)?, None),
        Command::Limits { case } => (commands::limits(&cfg, case)?, None),
        Command::Thresholds => (commands::thresholds(&cfg)?, None),
        Command::Validate => {
            let (t, r) = commands::validate(&cfg)?;
            (t, Some(r))
        }
    };
    match &cfg.output.path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table::write(&table, &cfg, &mut w)?;
            w.flush()
                .map_err(|e| CliError::Config(format!("cannot write output: {e}")))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table::write(&table, &cfg, &mut lock)?;
        }
    }
    if let Some(r) = report {
        eprintln!("{r}");
        if !r.passed() {
            return Err(CliError::Validation(r.failures()));
        }
    }
    if table.failed_rows > 0 {
        return Err(CliError::Numerical(format!(
            "{} of {} rows failed, see the error column",
            table.failed_rows,
            table.rows.len()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vdw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
