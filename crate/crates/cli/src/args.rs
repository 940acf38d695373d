use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(name = "goldbach-grover", version)]
#[command(about = "Goldbach partition search with a simulated Grover pulse sequence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classical Goldbach partitions of the given evens
    Oracle(OracleArgs),
    /// Build an instance and write it as JSON
    Build(BuildArgs),
    /// Simulate the Grover sequence and verify the detected partition
    Run(RunArgs),
    /// Sieve a sample over ascending drive primes
    Campaign(CampaignArgs),
    /// Rank pulse parameters by final target population
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Even numbers to partition
    pub numbers: Vec<u64>,
    /// Also partition every even in [FROM, TO]
    #[arg(long, requires = "to")]
    pub from: Option<u64>,
    #[arg(long, requires = "from")]
    pub to: Option<u64>,
    /// Largest small prime tried
    #[arg(long, default_value_t = 307)]
    pub pmax: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SGateArg {
    Ideal,
    Physical,
}

/// Options shared by every simulation command. Unset values fall back to
/// the config file, then to the built-in defaults.
#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// Flat TOML file with any of the options below
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Sample is base+2, base+4, ..., base+2*count
    #[arg(long)]
    pub base: Option<u64>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Largest small prime considered
    #[arg(long)]
    pub pmax: Option<u64>,
    /// Drive prime of the oracle pulse
    #[arg(long)]
    pub pdrive: Option<u64>,
    /// Commensurability integer; oracle coupling is 1/(2M)
    #[arg(long = "M")]
    pub m: Option<u32>,
    /// Diffusion quench strength
    #[arg(long)]
    pub vs: Option<f64>,
    /// Integrator step
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long, value_enum)]
    pub sgate: Option<SGateArg>,
    /// Grover cycles; optimal when omitted
    #[arg(long)]
    pub iters: Option<usize>,
    /// Output path prefix
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Load the instance from a JSON document instead of building it
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Also write amplitude traces of the first cycle
    #[arg(long)]
    pub trace: bool,
    /// Trace samples per drive period of the oracle pulse
    #[arg(long, default_value_t = 4)]
    pub trace_samples: usize,
    /// Corrupt the announced partition to exercise the verification gate
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct CampaignArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Candidate commensurability integers
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4, 6])]
    pub ms: Vec<u32>,
    /// Candidate quench strengths
    #[arg(long, value_delimiter = ',', default_values_t = [10.0, 100.0, 1000.0])]
    pub vss: Vec<f64>,
}
