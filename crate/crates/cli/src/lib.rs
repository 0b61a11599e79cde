//! Command-line front end for `orbitbound`.
//!
//! Commands write their reports atomically into the output directory and
//! return one of the exit codes below.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod commands;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::rootbound_values;

pub const EXIT_OK: u8 = 0;
/// I/O, usage or schema error.
pub const EXIT_ERROR: u8 = 1;
/// The system or request violates a precondition of the analysis.
pub const EXIT_PRECONDITION: u8 = 2;
/// A measured orbit broke one of the bounds.
pub const EXIT_BOUND_FAILURE: u8 = 3;

pub const OUTPUT_DIR_ENV: &str = "ORBITBOUND_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "orbitbound", version, about = "A-priori bounds and non-existence criteria for periodic orbits")]
pub struct Cli {
    /// Directory for report files [default: analysis.output_dir, then "."]
    #[arg(long, global = true, env = OUTPUT_DIR_ENV)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads for sweeps [default: all cores]
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Suppress the human-readable summary on stdout
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linear response, bounds and criteria for a config
    Analyze { config: PathBuf },
    /// Critical amplitude across a parameter grid
    Sweep {
        config: PathBuf,
        /// c-scale, k-scale, c, k, u0, U0, delta, omega or n
        #[arg(long)]
        param: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Geometric instead of uniform spacing
        #[arg(long)]
        log: bool,
    },
    /// Find periodic orbits numerically and check them against the bounds
    Verify {
        config: PathBuf,
        /// Multiplier applied to the configured forcing
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        /// Period multiplier; defaults to the configured ladder
        #[arg(long = "N", visible_alias = "periods")]
        periods: Option<u32>,
    },
    /// Root estimates for A y^s - B y - C
    Rootbound {
        #[arg(num_args = 4, value_names = ["A", "B", "C", "S"], conflicts_with_all = ["coeffs", "exponent"])]
        values: Vec<f64>,
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], requires = "exponent")]
        coeffs: Option<Vec<f64>>,
        #[arg(long, requires = "coeffs")]
        exponent: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

/// An error paired with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn error(error: impl Into<anyhow::Error>) -> Self {
        Self { code: EXIT_ERROR, error: error.into() }
    }

    pub fn precondition(error: impl Into<anyhow::Error>) -> Self {
        Self { code: EXIT_PRECONDITION, error: error.into() }
    }
}

/// Run one command and return its exit code.
pub fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze { config } => commands::analyze(cli, config),
        Command::Sweep { config, param, from, to, points, log } => {
            commands::sweep(cli, config, commands::SweepArgs { param: param.clone(), from: *from, to: *to, points: *points, log: *log })
        }
        Command::Verify { config, amplitude, periods } => commands::verify(cli, config, *amplitude, *periods),
        Command::Rootbound { values, coeffs, exponent, json } => {
            let (c, s) = match (coeffs, exponent) {
                (Some(c), Some(s)) => (c.clone(), *s),
                _ if values.len() == 4 => (values[..3].to_vec(), values[3]),
                _ => {
                    return Err(Failure::error(anyhow::anyhow!(
                        "give A B C S positionally or --coeffs A B C --exponent S"
                    )))
                }
            };
            commands::rootbound(c[0], c[1], c[2], s, *json)
        }
    }
}
