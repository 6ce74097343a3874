//! `arspec`: spectra of anti-regular graphs, verification suites, reference
//! tables, threshold-graph scans and plot data.
//!
//! Exit codes: 0 success, 2 a mathematical check failed, 64 usage error,
//! 70 internal error.

mod commands;
mod figures;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_CHECK_FAILED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "arspec",
    version,
    about = "Spectral toolkit for anti-regular and threshold graphs"
)]
struct Cli {
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format, where the command supports a choice.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cheb,
    Dense,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Omega,
    Extremal,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Theta,
    EvenCurves,
    OddCurves,
    Density,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of A_n from the trigonometric equations, the dense oracle, or both.
    Spectrum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, value_enum, default_value = "cheb")]
        method: Method,
    },
    /// Recompute the t_k ratio for the reference orders n = 250 .. 32000.
    Table1,
    /// Run the numerical verification suite for every order up to n_max.
    Verify {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..=500))]
        n_max: u64,
        /// Tolerance for the oracle comparison (negative control hook).
        #[arg(long, hide = true, default_value_t = commands::ORACLE_TOLERANCE)]
        oracle_tol: f64,
    },
    /// Exhaustive scan of all connected threshold graphs on n vertices.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=26))]
        n: u64,
        #[arg(long, value_enum, default_value = "both")]
        check: Check,
    },
    /// Histogram of the spectrum of A_n.
    Density {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        bins: u64,
    },
    /// CSV samples of the eigenvalue curves for external plotting.
    FigureData {
        #[arg(long, value_enum)]
        which: Figure,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(10..))]
        points: u64,
    },
}

/// What a command produced: the body to emit and whether its checks passed.
pub struct Report {
    pub body: Vec<u8>,
    pub passed: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl From<arspec_core::Error> for CliError {
    fn from(e: arspec_core::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("ARSPEC_THREADS") else {
        return Ok(());
    };
    let threads: usize = match raw.trim().parse() {
        Ok(t) if t > 0 => t,
        _ => {
            return Err(CliError::Usage(format!(
                "ARSPEC_THREADS must be a positive integer, got {raw:?}"
            )))
        }
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    configure_threads()?;
    let format = cli.format;
    match cli.command {
        Command::Spectrum { n, method } => {
            commands::spectrum(n as usize, method, format.unwrap_or(Format::Json))
        }
        Command::Table1 => commands::table1(format.unwrap_or(Format::Csv)),
        Command::Verify { n_max, oracle_tol } => {
            commands::verify(n_max as usize, oracle_tol, format)
        }
        Command::Scan { n, check } => {
            commands::scan(n as usize, check, format.unwrap_or(Format::Json))
        }
        Command::Density { n, bins } => {
            commands::density(n as usize, bins as usize, format.unwrap_or(Format::Csv))
        }
        Command::FigureData { which, k, points } => {
            if format == Some(Format::Json) {
                return Err(CliError::Usage("figure-data emits CSV only".into()));
            }
            figures::figure_data(which, k as usize, points as usize)
        }
    }
}

fn emit(out: Option<PathBuf>, body: &[u8]) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(body),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body)?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(report) => {
            if let Err(e) = emit(out, &report.body) {
                eprintln!("arspec: cannot write output: {e}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("arspec: {msg}\n\nRun `arspec --help` for usage.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("arspec: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
