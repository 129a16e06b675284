use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gradfuzz",
    version,
    about = "Gradient-trained fuzzy rule classifier"
)]
pub struct Cli {
    /// Directory holding the raw dataset files.
    #[arg(long, global = true, env = "GRADFUZZ_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,

    /// Seed for folds, rule antecedents and the gradient-check generator.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Download dataset files into the data directory and verify them.
    Fetch {
        /// Dataset key or `all`.
        #[arg(long, default_value = "all")]
        dataset: String,
    },
    /// Train on a full dataset and save the model.
    Train {
        #[arg(long)]
        dataset: String,
        #[command(flatten)]
        hyper: HyperArgs,
        /// Output model file.
        #[arg(long)]
        out: PathBuf,
        /// Optional `epoch,loss` text file.
        #[arg(long)]
        loss_curve: Option<PathBuf>,
    },
    /// 5-fold cross-validation against the published accuracies.
    Benchmark {
        /// Dataset key or `all`.
        #[arg(long, default_value = "all")]
        dataset: String,
        #[command(flatten)]
        hyper: HyperArgs,
        #[arg(long, default_value = "reports")]
        report_dir: PathBuf,
    },
    /// Print a model's rules, or trace one prediction.
    Explain {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated feature values, already min-max scaled (see `dump`).
        #[arg(long, allow_hyphen_values = true)]
        input: Option<String>,
        /// Rules listed in a trace.
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare analytic gradients with central differences on random models.
    Gradcheck {
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
        /// Number of random models.
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Upper bound on inputs, MFs, rules and classes.
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        #[arg(long, default_value_t = 16)]
        max_batch: usize,
    },
    /// Write a dataset as min-max scaled CSV, as seen by `train`.
    Dump {
        #[arg(long)]
        dataset: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct HyperArgs {
    /// Membership functions per input.
    #[arg(long)]
    pub mfs: Option<usize>,
    #[arg(long)]
    pub rules: Option<usize>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub lr: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}
