//! Command-line front end: `delta-crossing <mode> --config <path>`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 i/o failure.

use clap::{Args, Parser, Subcommand};
use delta_crossing::config::{ExperimentConfig, Mode};
use delta_crossing::run::{resolve_output_dir, run};
use delta_crossing::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "delta-crossing", version, about = "Wave-packet dynamics across a point-coupled two-channel junction")]
struct Cli {
    #[command(subcommand)]
    mode: ModeCmd,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Where CSV and summary files go (default: config output_dir or ./out).
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Suppress progress chatter on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Override the configured regime: high-energy or low-energy.
    #[arg(long)]
    regime: Option<String>,
}

#[derive(Subcommand)]
enum ModeCmd {
    /// Flux split R/T1/T2 against wavenumber, as CSV.
    Stationary(CommonArgs),
    /// Analytic kernel fields at the configured times.
    Propagate(CommonArgs),
    /// Grid-solver fields at the configured times.
    Oracle(CommonArgs),
    /// Truncated asymptotic series at one evaluation point.
    Series(SeriesArgs),
    /// Analytic-vs-grid comparison report.
    Compare(CommonArgs),
}

impl ModeCmd {
    fn split(self) -> (Mode, CommonArgs, Option<String>) {
        match self {
            ModeCmd::Stationary(a) => (Mode::Stationary, a, None),
            ModeCmd::Propagate(a) => (Mode::Propagate, a, None),
            ModeCmd::Oracle(a) => (Mode::Oracle, a, None),
            ModeCmd::Series(a) => (Mode::Series, a.common, a.regime),
            ModeCmd::Compare(a) => (Mode::Compare, a, None),
        }
    }
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 4;

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_)
        | Error::InvalidParameter(_)
        | Error::DomainCoverage(_)
        | Error::GridMismatch(_) => EXIT_CONFIG,
        Error::NegativeEnergy(_)
        | Error::Threshold
        | Error::DegeneratePoles(_)
        | Error::Regime(_)
        | Error::Quadrature(_)
        | Error::LinearSolve(_) => EXIT_NUMERICAL,
        Error::Io(_) => EXIT_IO,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args, regime_flag) = cli.mode.split();

    let mut cfg = match ExperimentConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    if let Some(regime) = regime_flag {
        let parsed = match serde_json::from_value(serde_json::json!(regime)) {
            Ok(r) => r,
            Err(_) => {
                eprintln!("error: unknown regime '{regime}' (expected high-energy or low-energy)");
                return ExitCode::from(EXIT_CONFIG);
            }
        };
        match cfg.series.as_mut() {
            Some(s) => s.regime = parsed,
            None => {
                eprintln!("error: --regime given but the config has no series section");
                return ExitCode::from(EXIT_CONFIG);
            }
        }
    }
    let out_dir = resolve_output_dir(&cfg, args.output_dir);
    let started = std::time::Instant::now();
    match run(&cfg, mode, &out_dir) {
        Ok(summary) => {
            if !args.quiet {
                eprintln!(
                    "{} finished in {:.2?}; {} file(s) in {}",
                    mode,
                    started.elapsed(),
                    summary.files.len() + 1,
                    out_dir.display()
                );
            }
            println!("{}", out_dir.join("summary.json").display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
