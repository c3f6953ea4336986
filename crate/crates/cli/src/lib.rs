//! Command-line front end for `stein-shrink`.
//!
//! Every subcommand writes one CSV to `--out` (atomically) and optionally an
//! SVG. Exit codes: 0 on success, 1 for computation or domain errors, 2 for
//! usage errors. Diagnostics go to stderr only.

// Range checks are written negated so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod svg;
pub mod table;
pub mod values;
pub mod verify;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::values::{dim_list, value_list, DimList, ValueList};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "stein-shrink",
    version,
    about = "Stein shrinkage risk: exact values, simulation and figures"
)]
pub struct Cli {
    /// Worker threads for Monte Carlo (results do not depend on it).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate reduced observations Z = (X1, R).
    Cloud(CloudArgs),
    /// Exact, approximate and simulated risk improvement of δ_C over δ0.
    RiskCurve(RiskCurveArgs),
    /// Two-point conditional loss decomposition.
    Conditional(ConditionalArgs),
    /// Projection of the target onto the ray through ξ.
    Geometry(GeometryArgs),
    /// Exact and asymptotic mean of the chi residual length.
    Special(SpecialArgs),
    /// Frequency of ‖X‖ ≥ ‖θ‖.
    Exceedance(ExceedanceArgs),
    /// Run the acceptance checks and report PASS/FAIL per criterion.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CloudArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RiskCurveArgs {
    #[arg(long, value_parser = dim_list)]
    pub p: DimList,
    /// Values, `start:stop:count` ranges, or comma lists of either.
    #[arg(long, value_parser = value_list, allow_hyphen_values = true)]
    pub theta: ValueList,
    #[arg(long, value_parser = value_list, allow_hyphen_values = true)]
    pub c: ValueList,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Replications for the paired Monte Carlo columns.
    #[arg(long)]
    pub mc_n: Option<usize>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConditionalArgs {
    #[arg(long, value_parser = value_list, allow_hyphen_values = true)]
    pub p: ValueList,
    #[arg(long, value_parser = value_list, allow_hyphen_values = true)]
    pub theta: ValueList,
    #[arg(long, value_parser = value_list, allow_hyphen_values = true)]
    pub c: ValueList,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecialArgs {
    #[arg(long, value_parser = dim_list)]
    pub p: DimList,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExceedanceArgs {
    #[arg(long, value_parser = dim_list)]
    pub p: DimList,
    #[arg(long, value_parser = value_list, allow_hyphen_values = true)]
    pub theta: ValueList,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// 100× fewer replications, 6σ gates.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug)]
pub enum CliError {
    Compute(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Compute(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<stein_shrink::Error> for CliError {
    fn from(e: stein_shrink::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build()
        {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command)),
            Err(e) => Err(CliError::Compute(format!("cannot start thread pool: {e}"))),
        },
        None => commands::dispatch(&cli.command),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}
