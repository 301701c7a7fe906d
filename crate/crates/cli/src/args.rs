use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndist_core::lab::{Construction, Sampler};
use ndist_core::DistanceKind;

#[derive(Debug, Parser)]
#[command(name = "ndist", version, about = "Evaluate geometric n-distances and probe their simplex ratios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a distance on the points of a file.
    Eval(EvalArgs),
    /// Simplex ratio of the points of a file with respect to z.
    Ratio(RatioArgs),
    /// Fuzz the simplex inequality on seeded random configurations.
    Check(CheckArgs),
    /// Estimate the best constant by multistart pattern search.
    Kstar(KstarArgs),
    /// Print a named extremal configuration.
    Construct(ConstructArgs),
    /// Recompute reference tables and constants.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Constants,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: DistanceKind,
    /// CSV (one point per row) or JSON point file.
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: DistanceKind,
    /// Point file. Without --z, z comes from the JSON "z" field or the last CSV row.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Comma-separated coordinates of z.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: DistanceKind,
    #[arg(short, long = "n", value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(short, long = "q", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub q: u64,
    /// Defaults to NDIST_SEED, else 0.
    #[arg(long, env = "NDIST_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value = "uniform", value_parser = parse_sampler)]
    pub sampler: Sampler,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct KstarArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
    /// Coordinate sweeps per restart.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub iters: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_parser = parse_construction)]
    pub name: Construction,
    #[arg(short, long = "n", value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    #[arg(short, long = "q", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub q: u64,
    /// Offset for figure4 and circle-arc.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Also evaluate the simplex ratio of this distance on the construction.
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<DistanceKind>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_kind(s: &str) -> Result<DistanceKind, String> {
    s.parse().map_err(|e: ndist_core::Error| e.to_string())
}

fn parse_sampler(s: &str) -> Result<Sampler, String> {
    s.parse().map_err(|e: ndist_core::Error| e.to_string())
}

fn parse_construction(s: &str) -> Result<Construction, String> {
    s.parse().map_err(|e: ndist_core::Error| e.to_string())
}
