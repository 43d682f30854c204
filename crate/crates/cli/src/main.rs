//! `trimul`: verification campaigns, multiplication runs, complexity tables
//! and float timings.
//!
//! Exit codes: 0 success, 1 mathematical failure (identity does not hold,
//! oracle mismatch), 2 usage or input error.

mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trimul_core::{parse_rational, Mode, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "trimul",
    version,
    about = "Exact checks and runs of a disjoint triple matrix multiplication scheme"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the aggregated identity on random integer instances.
    Verify(VerifyArgs),
    /// Run the bilinear algorithm on six matrices.
    Multiply(MultiplyArgs),
    /// Tabulate product counts and exponent bounds over block sizes.
    Complexity(ComplexityArgs),
    /// Time naive, raw and corrected multiplication in f64.
    Bench(BenchArgs),
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn mode_arg(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: trimul_core::Error| e.to_string())
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Split parameter; `h = n - g`.
    #[arg(long, default_value = "1", value_parser = rational_arg)]
    g: Rational,
    /// Correction parameter; defaults to `n`.
    #[arg(long, value_parser = rational_arg)]
    q: Option<Rational>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// Entries are drawn from [-range, range].
    #[arg(long, default_value_t = 10)]
    range: u32,
    /// Report path; standard output if absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MultiplyArgs {
    /// JSON array of the six input matrices.
    #[arg(long, conflicts_with = "n", required_unless_present = "n")]
    input: Option<PathBuf>,
    /// Generate random integer inputs of this size instead of reading a file.
    #[arg(long, requires = "seed")]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10)]
    range: u32,
    #[arg(long, default_value = "corrected", value_parser = mode_arg)]
    mode: Mode,
    /// Compare the outputs against the definitional products.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComplexityArgs {
    #[arg(long, default_value_t = trimul_core::complexity::DEFAULT_M_LO)]
    m_lo: u64,
    #[arg(long, default_value_t = trimul_core::complexity::DEFAULT_M_HI)]
    m_hi: u64,
    /// CSV table path; standard output if absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON summary path; standard error if absent.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated matrix sizes, each at least 2.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    reps: u32,
    #[arg(long)]
    seed: u64,
    /// CSV path; standard output if absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => commands::verify(args),
        Command::Multiply(args) => commands::multiply(args),
        Command::Complexity(args) => commands::complexity(args),
        Command::Bench(args) => commands::bench(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
