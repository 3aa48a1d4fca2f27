//! `ratser`: evaluate, normalize, compile and compare rational series
//! terms, and run the identity checks.
//!
//! Exit status is 0 on success or equivalence, 1 when two inputs differ or
//! a check fails, and 2 on any error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ratser::harness::Suite;
use ratser::semiring::SemiringDescriptor;

#[derive(Parser, Debug)]
#[command(name = "ratser", version, about = "Rational power series and weighted automata over exact semirings")]
pub struct Cli {
    /// n, ninf, bool, k:<int> or initial.
    #[arg(long, global = true, default_value = "ninf", value_parser = parse_semiring)]
    pub semiring: SemiringDescriptor,
    /// Letters such as "ab" or "a,b"; inferred from the input when omitted.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Truncation length for printed series.
    #[arg(long, global = true, default_value_t = 6)]
    pub maxlen: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Run data-parallel work on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the series of a term up to --maxlen.
    Eval { expr: String },
    /// Split a term as tc + t0 + 1*.tinf.
    Normalize {
        expr: String,
        /// Also make the supports of t0 and tinf disjoint.
        #[arg(long)]
        disjoint: bool,
    },
    /// Compile a term to an automaton in JSON.
    Compile {
        expr: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn an automaton file back into a term.
    Totterm { file: PathBuf },
    /// Decide whether two terms denote the same series (n or ninf).
    Equiv { left: String, right: String },
    /// Decide whether two automaton files have the same behavior (n or ninf).
    EquivFile { left: PathBuf, right: PathBuf },
    /// Search for a simulation or dual simulation between two automaton files.
    Simulate {
        left: PathBuf,
        right: PathBuf,
        /// Largest number of candidate maps to try.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
    },
    /// Run an identity suite.
    Check {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// z1, z2, z3, z4, s3 or a JSON file with a Cayley table.
        #[arg(long)]
        group: Option<String>,
    },
}

fn parse_semiring(s: &str) -> Result<SemiringDescriptor, String> {
    s.parse().map_err(|e: ratser::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: ratser::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
