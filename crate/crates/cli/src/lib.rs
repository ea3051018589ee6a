//! Command-line front end for `cangeo-core`.
//!
//! Exit codes: 0 on success, 2 for usage or input errors, 3 when an oracle
//! measurement disagrees with a predicted value.

pub mod commands;
pub mod render;

use std::ops::RangeInclusive;

use cangeo_core::oracle::field::DEFAULT_PRIME;
use cangeo_core::oracle::{OracleConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use render::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cangeo_core::Error),
    #[error("invalid range {0:?}: expected a..b with a <= b")]
    Range(String),
    #[error("writing output: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing output: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "cangeo",
    version,
    about = "Canonical double covers of blown-up planes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// RNG seed, decimal or 0x-prefixed hex
    #[arg(long, global = true, env = "CANGEO_SEED", value_parser = parse_seed, default_value = "0xC0FFEE")]
    pub seed: u64,
    /// Random point configurations per oracle call
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Field modulus for the oracle
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Cross-check classification verdicts against the rank of α
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a single pair (d, s)
    Classify { d: u32, s: u32 },
    /// Classify every pair in a rectangle of (d, s)
    Table {
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        s: RangeInclusive<u32>,
    },
    /// Measure fat-point dimensions or the rank of α
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Invariant pairs shared with scroll divisors on the line of m
    Xi {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        dmax: u32,
    },
    /// Lines, intervals and classified points in the (χ, c1²) plane
    Geography {
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<u32>,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum OracleCommand {
    /// h^0 of degree-k curves with r-fold points at s general points
    H0(FatPointArgs),
    /// h^1 of the same system
    H1(FatPointArgs),
    /// Rank of α for the pair (d, s)
    Alpha {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: u32,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FatPointArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub s: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub prime: u64,
    pub output_format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            prime: DEFAULT_PRIME,
            output_format: Format::Table,
        }
    }
}

impl RunConfig {
    pub fn oracle(&self) -> Result<OracleConfig, CliError> {
        Ok(OracleConfig::new(self.prime, self.trials, self.seed)?)
    }
}

impl From<&GlobalArgs> for RunConfig {
    fn from(g: &GlobalArgs) -> Self {
        Self {
            seed: g.seed,
            trials: g.trials,
            prime: g.prime,
            output_format: g.format,
        }
    }
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

/// `a..b`, inclusive on both ends.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let bad = || CliError::Range(s.to_string()).to_string();
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Rendered output plus exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = RunConfig::from(&cli.global);
    let report = match &cli.command {
        Command::Classify { d, s } => commands::classify(*d, *s, cli.global.oracle, &config)?,
        Command::Table { d, s } => {
            commands::table(d.clone(), s.clone(), cli.global.oracle, &config)?
        }
        Command::Oracle { which } => commands::oracle(*which, &config)?,
        Command::Xi { m, dmax } => commands::xi(*m, *dmax)?,
        Command::Geography { d } => commands::geography(d.clone())?,
    };
    let code = if report.mismatch {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        stdout: report.render(config.output_format)?,
        code,
    })
}
