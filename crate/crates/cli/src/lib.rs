//! Command-line harness: parameter-grid sweeps over the exact computations,
//! CSV emission, and the verification-suite runner.
//!
//! Outputs are deterministic: grid cells may be evaluated by any number of
//! workers, but every cell's RNG seed is a function of the run seed and the
//! cell index alone, and rows are written in grid order.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod csvout;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "congsum",
    version,
    about = "Exact congruence-count, character-sum and Kloosterman-sum experiments over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate one J query by all three algorithms
    Jcount(RunArgs),
    /// Sweep exact J against every bound expression over a grid
    Jsweep(RunArgs),
    /// Reduced lattice bases and the recursion-constant sweep
    Lattice(RunArgs),
    /// Randomized square-free coprime corpus for the complete-sum envelope
    Weil(RunArgs),
    /// Build Kloosterman tables and check their envelopes
    Kloosterman(RunArgs),
    /// Bilinear Kloosterman-sum sweep against the comparison bounds
    Bilinear(RunArgs),
    /// Trilinear character-sum sweep against the comparison bounds
    Trilinear(RunArgs),
    /// Run the full verification suite
    Verify(RunArgs),
}

#[derive(Args)]
pub struct RunArgs {
    /// Experiment configuration file (TOML)
    #[arg(long)]
    pub config: PathBuf,
    /// Override the config seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker count (fallback: config `jobs`, then CONGSUM_JOBS, then all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Kloosterman table cache directory
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration: exit code 2.
    Config(String),
    /// A checked property failed: exit code 1.
    Assertion(String),
    /// Everything else (I/O, thread pool): exit code 1.
    Runtime(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Assertion(msg) => write!(f, "assertion failure: {msg}"),
            CliError::Runtime(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("io: {e}"))
    }
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let (args, runner): (&RunArgs, fn(&config::Resolved) -> Result<(), CliError>) =
        match &cli.command {
            Command::Jcount(a) => (a, commands::jcount::run),
            Command::Jsweep(a) => (a, commands::jsweep::run),
            Command::Lattice(a) => (a, commands::lattice::run),
            Command::Weil(a) => (a, commands::weil::run),
            Command::Kloosterman(a) => (a, commands::kloosterman::run),
            Command::Bilinear(a) => (a, commands::bilinear::run),
            Command::Trilinear(a) => (a, commands::trilinear::run),
            Command::Verify(a) => (a, commands::verify::run),
        };

    let outcome = config::ConfigFile::load(&args.config)
        .and_then(|file| config::resolve(file, args))
        .and_then(|resolved| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(resolved.jobs)
                .build()
                .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
            pool.install(|| runner(&resolved))
        });

    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("congsum: {e}");
            e.exit_code()
        }
    }
}
