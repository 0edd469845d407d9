//! `quatpert`: figure and table data for quaternionic perturbations of bound
//! states.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical tolerance failure,
//! 3 I/O error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quatpert::ModelKind;

use commands::{CliError, Outcome};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "quatpert", version, about = "Quaternionic perturbation series, models and oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Decimal places for floating-point columns.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=15))]
    precision: u8,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gap ratio sigma versus truncation order.
    Sigma {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        n: u32,
        /// One or more coupling strengths (comma separated or repeated).
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_negative_numbers = true)]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        max_order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Complex, relativistic and quaternionic hydrogen levels in eV.
    HydrogenTable {
        #[arg(long, allow_negative_numbers = true)]
        alphaw: f64,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        /// Use the CODATA Rydberg energy instead of 13.6 eV.
        #[arg(long)]
        codata_rydberg: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hydrogen levels as functions of alpha|W| on [0, R_y/n^2].
    Levels {
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1,2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        codata_rydberg: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare series and closed form against a finite-difference eigensolve.
    Oracle {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Interior grid points.
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        #[arg(long, default_value_t = 50)]
        order: usize,
        #[arg(long, default_value_t = quatpert::oracle::ORACLE_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Term-by-term series for a single level.
    Series {
        #[arg(long, allow_negative_numbers = true)]
        e0: f64,
        #[arg(long)]
        w: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 20)]
        max_order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse::<ModelKind>().map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<(Outcome, OutputArgs), CliError> {
    Ok(match command {
        Command::Sigma { model, n, alpha, max_order, output } => {
            (commands::sigma(model, n, &alpha, max_order)?, output)
        }
        Command::HydrogenTable { alphaw, n_max, codata_rydberg, output } => {
            (commands::hydrogen_table(alphaw, n_max, codata_rydberg)?, output)
        }
        Command::Levels { n, samples, codata_rydberg, output } => {
            (commands::levels(&n, samples, codata_rydberg)?, output)
        }
        Command::Oracle { model, n, alpha, grid, order, tolerance, output } => {
            (commands::oracle(model, n, alpha, grid, order, tolerance)?, output)
        }
        Command::Series { e0, w, alpha, max_order, output } => {
            (commands::series_table(e0, w, alpha, max_order)?, output)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let (outcome, output) = match run(cli.command) {
        Ok(done) => done,
        Err(err) => {
            eprintln!("error: {}", err.message());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    let text = outcome.table.render(output.format, usize::from(output.precision));
    if let Err(err) = output::emit(&text, output.out.as_deref()) {
        let err = CliError::Io(format!("cannot write output: {err}"));
        eprintln!("error: {}", err.message());
        return ExitCode::from(err.exit_code() as u8);
    }
    match outcome.tolerance_failure {
        Some(message) => {
            eprintln!("FAIL: {message}");
            ExitCode::from(2)
        }
        None => ExitCode::SUCCESS,
    }
}
