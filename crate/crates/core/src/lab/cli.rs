use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "curvelab", version, about = "Translation lengths on curve graphs of the torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact computations in the Farey graph.
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Run an approximation sweep from a JSON config.
    Sweep(SweepArgs),
    /// Curves drawn on the torus.
    #[command(subcommand)]
    Fine(FineCmd),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum FareyCmd {
    Dist(PairArgs),
    Geodesic(PairArgs),
    Tl(TlArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

#[derive(Debug, Args)]
pub struct TlArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, default_value_t = 12)]
    pub mmax: u64,
    #[arg(long, default_value_t = 6)]
    pub kmax: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub config: PathBuf,
    /// Output directory; overrides the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum FineCmd {
    Dist(FineArgs),
}

#[derive(Debug, Args)]
pub struct FineArgs {
    #[arg(long)]
    pub alpha: PathBuf,
    #[arg(long)]
    pub beta: PathBuf,
    #[arg(long)]
    pub punctures: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// farey-oracle, axis, power-conjugacy, faithfulness, sandwich,
    /// fine-independence, periodic, soundness or all.
    pub suite: String,
    #[arg(long, default_value = "2,1,1,1")]
    pub matrix: String,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}
