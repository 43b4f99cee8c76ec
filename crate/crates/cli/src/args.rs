use clap::{Args, Parser, Subcommand, ValueEnum};

use permcode_core::analysis::Metric;
use permcode_core::coset::LabelingMode;

#[derive(Debug, Parser)]
#[command(
    name = "permcode",
    version,
    about = "Permutation codes in the block permutation and generalized Cayley metrics"
)]
pub struct Cli {
    /// Emit JSON on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Syndrome-bucketed (non-systematic) code.
    #[command(subcommand)]
    Coset(CosetCommand),
    /// Systematic code built on permutation extensions.
    #[command(subcommand)]
    Sys(SysCommand),
    /// Bounds and brute-force checks.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
}

#[derive(Debug, Args)]
pub struct CosetOpts {
    /// Code length N.
    #[arg(long)]
    pub n: usize,
    /// Block error budget.
    #[arg(
        long,
        visible_alias = "block-errors",
        required_unless_present = "cayley_errors"
    )]
    pub t: Option<usize>,
    /// Generalized transposition budget (block budget 4× this).
    #[arg(long, conflicts_with = "t")]
    pub cayley_errors: Option<usize>,
    /// Field size; defaults to the smallest prime ≥ N²−N.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value = "compact")]
    pub labeling: LabelingMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Channel {
    Block,
    Cayley,
}

#[derive(Debug, Args)]
pub struct SimOpts {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub channel: Option<Channel>,
    /// Errors injected per trial; defaults to the correction budget.
    #[arg(long)]
    pub errors: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CosetCommand {
    /// Read a permutation from stdin and print its syndrome.
    Encode(CosetOpts),
    /// Read a received permutation from stdin and decode it.
    Decode {
        #[command(flatten)]
        opts: CosetOpts,
        /// Syndrome, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<u64>,
    },
    /// Enumerate S_N by syndrome (small N only).
    Bucket {
        #[command(flatten)]
        opts: CosetOpts,
        /// List the members of this bucket.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u64>>,
    },
    /// Encode, corrupt and decode random messages.
    Simulate {
        #[command(flatten)]
        opts: CosetOpts,
        #[command(flatten)]
        sim: SimOpts,
    },
}

#[derive(Debug, Args)]
pub struct SysOpts {
    #[arg(long)]
    pub n: usize,
    /// Block error budget.
    #[arg(
        long,
        visible_alias = "block-errors",
        required_unless_present = "cayley_errors"
    )]
    pub t: Option<usize>,
    /// Generalized transposition budget; needs --large.
    #[arg(long, conflicts_with_all = ["t", "k"])]
    pub cayley_errors: Option<usize>,
    /// Number of residue blocks; defaults to 28t.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value = "compact")]
    pub labeling: LabelingMode,
    /// Allow the generalized Cayley preset (N > 112²).
    #[arg(long)]
    pub large: bool,
}

#[derive(Debug, Subcommand)]
pub enum SysCommand {
    /// Read a message permutation from stdin and print its codeword.
    Encode(SysOpts),
    /// Read a received codeword from stdin and print the message.
    Decode(SysOpts),
    Simulate {
        #[command(flatten)]
        opts: SysOpts,
        #[command(flatten)]
        sim: SimOpts,
    },
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCommand {
    /// Ball size bounds, exact when N is small.
    Ball {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "block")]
        metric: Metric,
    },
    /// Bounds on the optimal rate.
    Rate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "block")]
        metric: Metric,
    },
    /// Number of permutations of each block weight.
    Fm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Compare LCM{N+i : i ∈ Y} with N^{|Y|−k/2}.
    Lcm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Subset of 1..=k, comma-separated; random subsets when absent.
        #[arg(long, value_delimiter = ',')]
        y: Option<Vec<usize>>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimum in-bucket distance of the syndrome buckets (small N only).
    Mindist {
        #[command(flatten)]
        opts: CosetOpts,
        #[arg(long, default_value = "block")]
        metric: Metric,
    },
}
