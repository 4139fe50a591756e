//! Command-line surface of `trilo`: sample presentations, encode and solve
//! them, and run the Monte Carlo experiments with reproducible on-disk
//! outputs.

mod commands;
mod output;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

pub use commands::Outcome;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "trilo",
    version,
    about = "Random triangular presentations and their orderability obstructions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a presentation and write it to a file.
    Sample(SampleArgs),
    /// Encode a presentation as DIMACS CNF.
    Encode(EncodeArgs),
    /// Decide a presentation or a DIMACS formula.
    Solve(SolveArgs),
    /// Satisfiability sweep over a grid of densities.
    Sweep(SweepArgs),
    /// Bisection estimate of the density where P(sat) crosses 1/2.
    Threshold(ThresholdArgs),
    /// Quotient certificate for one presentation, or a batch of sampled ones.
    Quotient(QuotientArgs),
    /// Finite-n bounds for given (n, m) or (n, p).
    Bounds(BoundsArgs),
    /// Aggregate the trial records of one or more output directories.
    Report(ReportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelArg {
    Binomial,
    UniformM,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineArg {
    Dpll,
    Cdcl,
}

impl From<EngineArg> for trilo::Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Dpll => trilo::Engine::Dpll,
            EngineArg::Cdcl => trilo::Engine::Cdcl,
        }
    }
}

/// Solver selection shared by every command that solves.
#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// `dpll` is the reference search; `cdcl` is much faster on large instances.
    #[arg(long, value_enum, default_value = "dpll")]
    pub engine: EngineArg,
    /// Per-instance wall-clock budget; exhausted instances are indeterminate.
    #[arg(long)]
    pub budget_ms: Option<u64>,
}

/// Flags shared by the Monte Carlo commands.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Worker threads (0 = one per core). Never changes the results.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Exit 0 even if some trials ran out of budget.
    #[arg(long)]
    pub allow_timeouts: bool,
    /// Record per-trial solve times (outputs then differ between runs).
    #[arg(long)]
    pub record_timing: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("density").args(["p", "c", "m"]).required(true))]
pub struct SampleArgs {
    #[arg(long)]
    pub n: u32,
    /// Inclusion probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Density, `p = c / n²`.
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, value_enum, default_value = "binomial")]
    pub model: ModelArg,
    /// Number of draws for `uniform-m` (default ⌈8pn³⌉).
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// `all`, or a comma-separated list of generator indices.
    #[arg(long, default_value = "all", conflicts_with_all = ["nae", "survivors"])]
    pub subset: String,
    /// Write the not-all-equal form, each clause followed by its complement.
    #[arg(long, conflicts_with = "survivors")]
    pub nae: bool,
    /// Write the survivor query for at least this many active generators.
    #[arg(long)]
    pub survivors: Option<u32>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").args(["input", "dimacs"]).required(true))]
pub struct SolveArgs {
    /// Presentation file; solves `Φ_R` over all generators.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub dimacs: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub c_min: f64,
    #[arg(long)]
    pub c_max: f64,
    #[arg(long)]
    pub c_step: f64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "binomial")]
    pub model: ModelArg,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub c_lo: f64,
    #[arg(long)]
    pub c_hi: f64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Stop once the bracket is narrower than this.
    #[arg(long, default_value_t = 0.01)]
    pub width: f64,
    /// Also write the bracket trace as an output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    Exhaustive,
    Survivor,
    Sampled,
}

#[derive(Args, Debug)]
pub struct QuotientArgs {
    /// Certify this presentation. Without it, `--n`, `--p`/`--c`,
    /// `--trials`, `--seed` and `--out` run a batch of sampled ones.
    #[arg(long = "in", conflicts_with_all = ["n", "p", "c", "trials", "out"])]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum)]
    pub strategy: StrategyArg,
    /// Subsets tried by the sampled strategy.
    #[arg(long, default_value_t = 1000)]
    pub samples: u32,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, requires_all = ["trials", "seed", "out"])]
    pub n: Option<u32>,
    #[arg(long, conflicts_with = "c")]
    pub p: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("law").args(["m", "p"]).required(true))]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Output directories (repeatable).
    #[arg(long = "in", required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Finished with indeterminate trials and no `--allow-timeouts`.
pub const EXIT_INDETERMINATE: u8 = 3;

pub fn dispatch(command: Command) -> anyhow::Result<Outcome> {
    commands::run(command)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> anyhow::Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch(Cli::try_parse_from(args)?.command)
}

/// Reports the outcome on stderr and maps it to the exit status.
pub fn exit_status(result: anyhow::Result<Outcome>) -> ExitCode {
    match result {
        Ok(Outcome::Complete) => ExitCode::SUCCESS,
        Ok(Outcome::Indeterminate(count)) => {
            eprintln!("error: {count} indeterminate trial(s); rerun with a larger --budget-ms or pass --allow-timeouts");
            ExitCode::from(EXIT_INDETERMINATE)
        }
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
