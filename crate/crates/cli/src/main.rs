//! `lelong`: exact and numerical singularity invariants from the command line.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Montecarlo,
}

#[derive(Debug, Parser)]
#[command(name = "lelong", version, about = "Lelong numbers, Newton diagrams, residual Monge-Ampere masses and Green functions")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Quadrature nodes per torus axis (capped so that nodes^dim <= 2^18).
    #[arg(long, global = true, default_value_t = 512)]
    pub nodes: usize,
    /// Write the report to DIR/<command>.<format> instead of stdout.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton diagram, directional indices, Lelong and partial numbers, and residual mass of log|F|.
    Analyze {
        /// Polynomial, e.g. "x1^2*x2 + x2^3".
        poly: String,
        /// Number of variables; defaults to the largest variable index used.
        #[arg(long)]
        dim: Option<usize>,
        /// Recentering point x0, e.g. "1,1/2" or "(0,1),2".
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Direction a with positive rational entries, e.g. "1,1/2". Repeatable; defaults to (1,...,1).
        #[arg(long = "dir")]
        dirs: Vec<String>,
        /// Include wall-clock timing in the report (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// Numeric directional numbers and indicator values of a model function.
    Estimate {
        /// Model as JSON text or a path to a JSON file.
        spec: String,
        /// Direction a. Repeatable; defaults to (1,...,1) when no probe is given.
        #[arg(long = "dir")]
        dirs: Vec<String>,
        /// Indicator probe y in (0,1)^n, e.g. "0.3,0.5". Repeatable.
        #[arg(long = "probe")]
        probes: Vec<String>,
        /// Ladder runs w = 10^-1 ... 10^-LAST.
        #[arg(long, default_value_t = 8)]
        last_decade: i32,
        /// Subtract the estimated sup over the unit polydisk first.
        #[arg(long)]
        normalize: bool,
        /// Compare against exact Newton indices (log|F| models only).
        #[arg(long)]
        exact_compare: bool,
    },
    /// Weighted multi-pole Green function of the unit disk and its certificate.
    Green1d {
        /// Pole system as JSON text or a file; defaults to poles {0, 1/2} with weights {1, 1}.
        system: Option<String>,
        /// Interior sample count.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Also certify the polydisk self-Green property of this diagram (JSON text or file).
        #[arg(long, value_name = "DIAGRAM")]
        selfgreen: Option<String>,
    },
    /// Equal indicators whose functions are not comparable near the origin.
    Counterexample {
        /// Points t of the curve x1 = -t^2, x2 = t, e.g. "0.1,0.01".
        #[arg(long)]
        t_grid: Option<String>,
        /// Sphere samples for v <= f.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Residual Monge-Ampere mass of an indicator diagram.
    Mass {
        /// Diagram as JSON text or a file, e.g. '{"dim":2,"generators":[["1","0"],["0","2"]]}'.
        diagram: String,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli).and_then(|report| {
        output::emit(&cli, &report)?;
        report.violation.map_or(Ok(()), |msg| Err(Failure::Violation(msg)))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(3)
        }
    }
}
