//! `plate`: clamped-plate eigenvalue bounds on unit-area rectangles.

mod commands;
mod config;
mod format;
mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::TableFormat;
use config::Config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerics(#[from] clamped_plate::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerics(e) if e.is_precondition() => 2,
            CliError::Numerics(_) | CliError::Io(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "plate", version, about = "Clamped-plate eigenvalue bounds on unit-area rectangles")]
struct Cli {
    /// TOML file with per-command defaults; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ground state rho(alpha) of the tensioned clamped beam.
    Rho(RhoArgs),
    /// Bracket the aspect ratio where the separable lower bound reaches lambda.
    OwenBracket(OwenArgs),
    /// Lower and upper bounds for lambda_1 over a grid of aspect ratios.
    BoundsTable(TableArgs),
    /// Minimise lambda_k(a) over a grid of aspect ratios.
    Scan(ScanArgs),
    /// Two-term Weyl predictions against exact and Ritz values.
    Weyl(WeylArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct RhoArgs {
    /// Tension parameter, alpha >= 0.
    alpha: f64,
    /// Bisection tolerance on rho.
    #[arg(long)]
    tol: Option<f64>,
    /// Also run the finite-difference oracle and report the discrepancy.
    #[arg(long)]
    oracle: bool,
    /// Oracle grid size (at least 32).
    #[arg(long)]
    gridpoints: Option<usize>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct OwenArgs {
    /// Target eigenvalue level.
    #[arg(long)]
    lambda: Option<f64>,
    /// Width of the returned aspect bracket.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Aspect grid as START:STOP:STEP.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Beam modes per direction for the Ritz column (0 omits it).
    #[arg(long)]
    modes: Option<usize>,
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Eigenvalue index.
    #[arg(long)]
    k: Option<usize>,
    /// navier or clamped-ritz.
    #[arg(long)]
    kind: Option<String>,
    /// Aspect grid as START:STOP:STEP.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Beam modes per direction for clamped-ritz.
    #[arg(long)]
    modes: Option<usize>,
    /// Write a plot of lambda_k(a) to this path.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct WeylArgs {
    /// Eigenvalue index.
    k: usize,
    /// Aspect ratio (values below 1 are replaced by 1/a).
    a: f64,
    /// Beam modes per direction for the Ritz value.
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("PLATE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("PLATE_THREADS={value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Rho(args) => {
            let tol = args.tol.or(cfg.rho.tol).unwrap_or(commands::DEFAULT_RHO_TOL);
            let gridpoints = args
                .gridpoints
                .or(cfg.rho.gridpoints)
                .unwrap_or(commands::DEFAULT_ORACLE_GRIDPOINTS);
            let text = commands::rho(args.alpha, tol, args.oracle.then_some(gridpoints))?;
            emit(&text, args.out.as_deref())
        }
        Command::OwenBracket(args) => {
            let lambda = args
                .lambda
                .or(cfg.owen_bracket.lambda)
                .unwrap_or(commands::DEFAULT_OWEN_LAMBDA);
            let tol = args
                .tol
                .or(cfg.owen_bracket.tol)
                .unwrap_or(clamped_plate::bounds::DEFAULT_ASPECT_TOL);
            emit(&commands::owen_bracket(lambda, tol)?, args.out.as_deref())
        }
        Command::BoundsTable(args) => {
            let grid = args
                .grid
                .or(cfg.bounds_table.grid)
                .unwrap_or_else(|| commands::DEFAULT_TABLE_GRID.into());
            let modes = args
                .modes
                .or(cfg.bounds_table.modes)
                .unwrap_or(commands::DEFAULT_TABLE_MODES);
            let format: TableFormat = args
                .format
                .or(cfg.bounds_table.format)
                .as_deref()
                .unwrap_or("csv")
                .parse()?;
            emit(&commands::bounds(&grid, modes, format)?, args.out.as_deref())
        }
        Command::Scan(args) => {
            let k = args
                .k
                .or(cfg.scan.k)
                .ok_or_else(|| CliError::Usage("scan needs --k (or k in the config file)".into()))?;
            let modes = args.modes.or(cfg.scan.modes).unwrap_or(commands::DEFAULT_SCAN_MODES);
            let kind = args.kind.or(cfg.scan.kind).unwrap_or_else(|| "navier".into());
            let kind = commands::parse_scan_kind(&kind, modes)?;
            let grid = args
                .grid
                .or(cfg.scan.grid)
                .unwrap_or_else(|| commands::DEFAULT_SCAN_GRID.into());
            let report = commands::scan(k, kind, &grid)?;
            if let Some(path) = &args.svg {
                emit(&report.svg, Some(path))?;
            }
            emit(&report.json, args.out.as_deref())
        }
        Command::Weyl(args) => {
            let modes = args.modes.or(cfg.weyl.modes).unwrap_or(commands::DEFAULT_WEYL_MODES);
            emit(&commands::weyl(args.k, args.a, modes)?, args.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stage = match &cli.command {
        Command::Rho(_) => "rho",
        Command::OwenBracket(_) => "owen-bracket",
        Command::BoundsTable(_) => "bounds-table",
        Command::Scan(_) => "scan",
        Command::Weyl(_) => "weyl",
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("plate {stage}: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_alpha_parses() {
        let cli = Cli::try_parse_from(["plate", "rho", "-1"]).unwrap();
        assert!(matches!(cli.command, Command::Rho(RhoArgs { alpha, .. }) if alpha == -1.0));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::from(clamped_plate::Error::EmptyGrid).exit_code(), 2);
        let numeric = clamped_plate::Error::BracketFailure { stage: "rho" };
        assert_eq!(CliError::from(numeric).exit_code(), 3);
    }
}
