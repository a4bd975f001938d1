mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "wzd",
    version,
    about = "Laplacian spectra of weakly zero-divisor graphs of Z_n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; not every command supports every format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Integrality tolerance for numeric eigenvalues.
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = positive_f64)]
    pub tol: f64,

    /// Moduli evaluated concurrently in sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Largest Laplacian order for the exact characteristic polynomial check.
    #[arg(long, global = true, env = "WZD_MAX_ORDER", default_value_t = 256)]
    pub max_order: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form Laplacian spectrum of WΓ(Z_n).
    Spectrum {
        #[arg(value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
    },
    /// Build WΓ(Z_n) from its divisor classes and serialize it.
    Graph {
        #[arg(value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        /// Also list the divisor classes and their induced subgraphs.
        #[arg(long)]
        classes: bool,
    },
    /// Check the closed form against the explicit graph for every n in LO..HI.
    Verify { range: NRange },
    /// Summary row per n in LO..HI.
    Table { range: NRange },
    /// Spectrum of a generalized join described by a JSON file.
    Join {
        file: PathBuf,
        /// Assemble the explicit join graph and compare with its eigenvalues.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

/// Inclusive range `LO..HI` with `2 <= LO <= HI`; a bare `N` means `N..N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
            None => (s, s),
        };
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("invalid bound `{t}`: {e}"))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo < 2 {
            return Err(format!("lower bound must be at least 2, got {lo}"));
        }
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Self { lo, hi })
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a positive number, got {s}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    commands::run(&cli)
}
