use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oos_core::{LossKind, RuleKind};

use crate::output::Output;

#[derive(Debug, Parser)]
#[command(name = "oos", version, about = "Out-of-source error estimation for multi-source data")]
pub struct Cli {
    /// Decimal places in text output.
    #[arg(long, global = true, default_value_t = 4)]
    pub precision: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn output(&self) -> Output {
        Output { format: self.format, precision: self.precision }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the out-of-source error of a `source,value` CSV.
    Estimate(EstimateArgs),
    /// Closed-form error (and variance) for normal sources.
    Theory(TheoryArgs),
    /// Re-run one of the four simulation study tables.
    Reproduce(ReproduceArgs),
    /// Check whether `t_sigma σ² + t_c C + t_mu μ²` is unbiasedly estimable.
    Feasibility(FeasibilityArgs),
    /// Var(s²) on the pathological exchangeable sequence.
    Pathology(PathologyArgs),
    /// Run a simulation described by a TOML file.
    Simulate(SimulateArgs),
}

fn parse_loss(s: &str) -> Result<LossKind, String> {
    s.parse()
}

fn parse_rule(s: &str) -> Result<RuleKind, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_parser = parse_loss, default_value = "squared")]
    pub loss: LossKind,
    #[arg(long, value_parser = parse_rule, default_value = "mean")]
    pub rule: RuleKind,
    /// Stratified bootstrap replicates for a variance estimate.
    #[arg(long)]
    pub bootstrap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub means: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub vars: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<f64>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_loss, default_value = "squared")]
    pub loss: LossKind,
    /// Also print every second-moment component and the variance.
    #[arg(long)]
    pub components: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub table: u8,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Keep the full replicate count at n = 10000.
    #[arg(long)]
    pub full: bool,
    /// Override the sample-size grid.
    #[arg(long, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,
    /// Also write the CSV report here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeasibilityArgs {
    /// Coefficient of σ²; rational expression, may use `n`.
    #[arg(long, allow_hyphen_values = true)]
    pub t_sigma: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t_c: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t_mu: String,
    #[arg(long)]
    pub n: Option<i64>,
}

#[derive(Debug, Args)]
pub struct PathologyArgs {
    #[arg(long, value_delimiter = ',', default_value = "10,20,40,80,160")]
    pub n_grid: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
    #[arg(long, default_value_t = 2.0)]
    pub sigma2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Add the iid-normal control study.
    #[arg(long)]
    pub control: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub config: PathBuf,
}
