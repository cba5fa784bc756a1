//! `kpotent`: decide and build decompositions into potent and finite-order
//! matrices from JSON inputs.
//!
//! Exit codes: 0 success or verified, 1 infeasible or verification failed,
//! 2 input error.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    /// Exact arithmetic in Q(ζ_k).
    Exact,
    /// Complex floating point with tolerance `--eps`.
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecomposeMode {
    /// Sum of F(1) potent matrices.
    Sum,
    /// Linear combination Σ c_i E_i from a signed certificate.
    Lincomb,
    /// Sum of order-k matrices plus copies of ±ωI.
    FiniteOrder,
}

#[derive(Debug, Parser)]
#[command(name = "kpotent", version, about = "Sums of (k+1)-potent and finite-order matrices")]
pub struct Cli {
    /// Scalar backend; defaults to the input file's backend, else exact.
    #[arg(long, global = true, value_enum)]
    pub backend: Option<Backend>,
    /// Tolerance of the float backend.
    #[arg(long, global = true, default_value_t = kpotent::scalars::DEFAULT_EPS)]
    pub eps: f64,
    /// Recorded in reports; every computation is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whether the matrix satisfies A^{k+1} = A.
    CheckPotent {
        #[arg(long)]
        k: u32,
        /// Matrix JSON file, or `-` for stdin.
        input: PathBuf,
    },
    /// Smallest m <= bound with A^m = I.
    Order {
        #[arg(long, default_value_t = 24)]
        bound: u64,
        input: PathBuf,
    },
    /// Rank, trace and the minimal trace certificate.
    Analyze {
        /// Root order; defaults to the file's k.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = kpotent::trace::DEFAULT_BUDGET)]
        budget: u64,
        input: PathBuf,
    },
    /// Decompose a finite matrix.
    Decompose {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = DecomposeMode::Sum)]
        mode: DecomposeMode,
        /// Sum mode: certificate JSON (inline or file). Lincomb mode: a
        /// signed polynomial such as `4 - 6*w + 10*w^2`.
        #[arg(long)]
        cert: Option<String>,
        /// Multi-root certificate JSON file (sum mode).
        #[arg(long, conflicts_with = "cert")]
        multiroot: Option<PathBuf>,
        input: PathBuf,
    },
    /// Decompose a column-finite family into at most 14 potent summands and
    /// check the leading N×N blocks.
    Decompose14 {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 16)]
        truncate: usize,
        /// Family JSON file, or `-` for stdin.
        input: PathBuf,
    },
    /// Re-check a decomposition JSON file.
    Verify { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&outcome.json).expect("reports serialize"));
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.code)
}
