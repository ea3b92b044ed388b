use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "peterweyl", version, about = "Fourier analysis, decay classification and convolution factorization on T^1, T^2 and SU(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward transform of a grid function or builtin; writes coefficients and a decay table.
    Transform(TransformArgs),
    /// Fits the critical decay parameter of a coefficient family against a weight.
    Classify(ClassifyArgs),
    /// Factors a function (or the orbit of a vector) through convolution.
    Factorize(FactorizeArgs),
    /// Runs the property suite and prints a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// t1, t2 or su2.
    #[arg(long, default_value = "t1")]
    pub group: String,
    #[arg(long, default_value_t = 16)]
    pub bandlimit: usize,
    /// gevrey:s=<s>, gevrey:<s>, log1p or table:<path.csv>.
    #[arg(long, default_value = "gevrey:1")]
    pub weight: String,
    #[arg(long, default_value_t = 1.0)]
    pub h: f64,
    /// Defaults to 2h.
    #[arg(long)]
    pub h_prime: Option<f64>,
    /// Grid CSV, coefficient JSON, or a builtin: poisson:<t>, heat:<t>, bump:<s>:<delta>.
    #[arg(long)]
    pub input: Option<String>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FactorizeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Use a compactly supported factor (t1 only).
    #[arg(long)]
    pub supported: bool,
    /// Radius of the support interval (-delta, delta).
    #[arg(long, default_value_t = 0.5)]
    pub support_delta: f64,
    /// Number of partition pieces; defaults to ceil(4 pi / delta) + 1.
    #[arg(long)]
    pub pieces: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub bump_order: f64,
    /// Factor the orbit of a random vector in the representation with these
    /// blocks, e.g. "0,1" (su2 twice-spins), "-1,2" (t1) or "1:0,0:2" (t2).
    #[arg(long)]
    pub rep: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}
