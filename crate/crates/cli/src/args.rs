use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

/// Entropy toolkit: subshift entropy, tangency extensions, and entropy
/// estimates for the shipped map families.
#[derive(Debug, Parser)]
#[command(name = "entropy-toolkit", version, about)]
pub struct Cli {
    /// TOML config file; flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads for data-parallel work [default: 1]
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    /// Seed recorded in report metadata; every computation is deterministic [default: 0]
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radius and entropy of a transition matrix
    SftEntropy(SftEntropyArgs),
    /// Build the extended matrix of an unfolded tangency
    Extend(ExtendArgs),
    /// Run the Perron minor chain on an extended matrix
    Chain(ChainArgs),
    /// Estimate entropy of a map family
    Estimate(EstimateArgs),
    /// Entropy gap over a grid of strip lengths
    SweepGap(SweepGapArgs),
    /// Entropy across the flow parameter of the 3-ball family
    SweepDisc(SweepDiscArgs),
    /// Snake-perturbation entropy lower bound
    Snake(SnakeArgs),
    /// Classify entropy variation from basic-piece entropies
    Verdict(VerdictArgs),
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SftEntropyArgs {
    /// Matrix file (order line, then rows of 0/1)
    #[arg(value_name = "MATRIX")]
    pub matrix: Option<PathBuf>,
    /// Bracket width for power iteration [default: 1e-12]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Also list irreducible components
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    pub decompose: Option<bool>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExtendArgs {
    /// Spec file with H, N1, N2 entries
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Matrix file of the horseshoe block H
    #[arg(long = "H", value_name = "FILE")]
    #[serde(rename = "H")]
    pub h: Option<PathBuf>,
    /// Length of the first strip
    #[arg(long)]
    pub n1: Option<usize>,
    /// Length of the second strip
    #[arg(long)]
    pub n2: Option<usize>,
    /// Output matrix file [default: stdout]
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ChainArgs {
    /// Spec file with H, N1, N2 entries
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Matrix file of the horseshoe block H
    #[arg(long = "H", value_name = "FILE")]
    #[serde(rename = "H")]
    pub h: Option<PathBuf>,
    /// Length of the first strip
    #[arg(long)]
    pub n1: Option<usize>,
    /// Length of the second strip
    #[arg(long)]
    pub n2: Option<usize>,
    /// Extended matrix to check [default: built from the spec]
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    /// Bracket width for power iteration [default: 1e-12]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output CSV file
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct EstimateArgs {
    /// horseshoe, isotopy or ball3 [default: horseshoe]
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameter: t for isotopy, tau for ball3 [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    pub params: Option<f64>,
    /// Orbit length [default: 12]
    #[arg(long)]
    pub n: Option<usize>,
    /// Separation scale [default: 1e-3]
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Grid points per axis [default: 400]
    #[arg(long)]
    pub grid_resolution: Option<usize>,
    /// Fit window as LO,HI [default: ceil(n/2),n]
    #[arg(long, value_delimiter = ',', num_args = 2, value_names = ["LO", "HI"])]
    pub tail_window: Option<Vec<usize>>,
    /// Isotopy ramp width [default: 0.01]
    #[arg(long)]
    pub ramp: Option<f64>,
    /// Estimate the derivative growth rate instead of entropy
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    pub growth: Option<bool>,
    /// Output CSV file
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SweepGapArgs {
    /// Matrix file of the horseshoe block H
    #[arg(long = "H", value_name = "FILE")]
    #[serde(rename = "H")]
    pub h: Option<PathBuf>,
    /// Values of N1 [default: 1,2,3]
    #[arg(long, value_delimiter = ',')]
    pub n1: Option<Vec<usize>>,
    /// Values of N2; without it N2 = N1 on every row
    #[arg(long, value_delimiter = ',')]
    pub n2: Option<Vec<usize>>,
    /// Bracket width for power iteration [default: 1e-12]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output CSV file
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SweepDiscArgs {
    /// Flow parameters; must include 0 [default: 0,0.05,0.2]
    #[arg(long, value_delimiter = ',')]
    pub taus: Option<Vec<f64>>,
    /// Orbit length on the invariant slice [default: 12]
    #[arg(long)]
    pub n: Option<usize>,
    /// Separation scale on the slice [default: 1e-3]
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Slice grid points per axis [default: 400]
    #[arg(long)]
    pub grid_resolution: Option<usize>,
    /// Orbit length in the ball [default: 10]
    #[arg(long)]
    pub ball_n: Option<usize>,
    /// Separation scale in the ball [default: 1e-2]
    #[arg(long)]
    pub ball_epsilon: Option<f64>,
    /// Ball grid points per axis [default: 40]
    #[arg(long)]
    pub ball_grid_resolution: Option<usize>,
    /// Isotopy ramp width [default: 0.01]
    #[arg(long)]
    pub ramp: Option<f64>,
    /// Output CSV file
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SnakeArgs {
    /// Expanding eigenvalue, > 1
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Contracting eigenvalue in (0, 1); omit for the area-preserving case
    #[arg(long)]
    pub mu: Option<f64>,
    /// Period of the saddle [default: 1]
    #[arg(long)]
    pub tau: Option<u64>,
    /// Slack subtracted from the bound [default: 0]
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct VerdictArgs {
    /// Entropies of the basic pieces, comma separated
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub pieces: Option<Vec<f64>>,
    /// Zero-based index of the piece carrying the tangency
    #[arg(long)]
    pub index: Option<usize>,
    /// C^k defect bound [default: 0]
    #[arg(long)]
    pub alpha: Option<f64>,
}

/// Config file layout: global keys plus one table per subcommand.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigFile {
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub sft_entropy: Option<SftEntropyArgs>,
    pub extend: Option<ExtendArgs>,
    pub chain: Option<ChainArgs>,
    pub estimate: Option<EstimateArgs>,
    pub sweep_gap: Option<SweepGapArgs>,
    pub sweep_disc: Option<SweepDiscArgs>,
    pub snake: Option<SnakeArgs>,
    pub verdict: Option<VerdictArgs>,
}
