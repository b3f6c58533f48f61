//! Command-line front end for `fiberspec`.
//!
//! Every subcommand returns an exit code: 0 on success, 1 on usage errors
//! (bad flags, bad config, unwritable output), 2 when a computation did not
//! converge or a check failed.

mod commands;
pub mod config;
pub mod output;
pub mod range;
pub mod svg;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) => EXIT_FAIL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Failed(s) => write!(f, "failed: {s}"),
        }
    }
}

impl From<fiberspec::Error> for CliError {
    fn from(e: fiberspec::Error) -> Self {
        match e {
            fiberspec::Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "fiberspec", version, about = "Fiber eigenvalues of the magnetic Robin Laplacian on the ball")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. They override values from `--config`.
#[derive(Args, Debug, Default, Clone)]
pub struct GlobalArgs {
    /// Flat JSON configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output directory for CSV/JSON/SVG files [default: ./out].
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Comma-separated subset of csv,json,svg [default: csv,json].
    #[arg(long, global = true, value_delimiter = ',')]
    pub formats: Option<Vec<String>>,
    #[arg(long, global = true)]
    pub n_initial: Option<usize>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub residual_tol: Option<f64>,
    /// Galerkin basis: angular or legendre.
    #[arg(long, global = true)]
    pub basis: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lowest eigenvalue λ_m(b) of one fiber operator.
    Lambda(commands::lambda::Opts),
    /// λ_m(b) over a grid of b and a set of modes; writes sweep.csv, effective.csv, sweep.svg.
    Sweep(commands::sweep::Opts),
    /// Effective eigenvalue 𝔢(b) = min_m λ_m(b).
    Effective(commands::effective::Opts),
    /// Crossing point of two mode curves.
    Crossing(commands::crossing::Opts),
    /// dλ_m/db from the Hellmann–Feynman formula.
    Derivative(commands::derivative::Opts),
    /// Limit-point / limit-circle verdicts and leading Frobenius data.
    Classify(commands::classify::Opts),
    /// Frobenius series at θ = 0 for one indicial root.
    Series(commands::series::Opts),
    /// Non-monotonicity certificate for 𝔢 with supporting checks.
    Certify(commands::certify::Opts),
    /// Quadrature and basis self-tests.
    Validate(commands::validate::Opts),
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return e.code();
        }
    };
    let result = match &cli.command {
        Command::Lambda(o) => commands::lambda::run(o, &cfg),
        Command::Sweep(o) => commands::sweep::run(o, &cfg),
        Command::Effective(o) => commands::effective::run(o, &cfg),
        Command::Crossing(o) => commands::crossing::run(o, &cfg),
        Command::Derivative(o) => commands::derivative::run(o, &cfg),
        Command::Classify(o) => commands::classify::run(o, &cfg),
        Command::Series(o) => commands::series::run(o, &cfg),
        Command::Certify(o) => commands::certify::run(o, &cfg),
        Command::Validate(o) => commands::validate::run(o, &cfg),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    }
}
