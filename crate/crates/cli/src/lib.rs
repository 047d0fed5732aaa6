//! Command-line front end for `fairalloc`: JSON instance files, the
//! allocation pipeline, property checks, instance generation and exhaustive
//! searches.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 bad input, 3
//! internal failure.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fairalloc::verify::DEFAULT_ENUMERATION_CAP;
use fairalloc::{ExplorationOrder, ExplorationStrategy, RootRule};
use serde_json::json;

pub use commands::{Check, GenParams, Outcome, WeightMode};
pub use document::{AllocationDocument, InstanceDocument, LoadedInstance};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "fairalloc", version, about = "Fair allocation of mixed goods and chores")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Bfs,
    Dfs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RootRuleArg {
    OneItem,
    LowestIndex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightsArg {
    Equal,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a weighted PROP1 and fPO allocation.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "bfs")]
        strategy_order: OrderArg,
        #[arg(long, value_enum, default_value = "one-item")]
        root_rule: RootRuleArg,
    },
    /// Check properties of an allocation.
    Verify {
        instance: PathBuf,
        allocation: PathBuf,
        /// Comma-separated: prop, prop1, propx, po, fpo, dominates.
        #[arg(long, default_value = "prop1,fpo")]
        property: String,
        /// Allocation to compare against for `dominates`.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
    },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
        min: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        max: i64,
        #[arg(long, value_enum, default_value = "equal")]
        weights: WeightsArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count the integral allocations satisfying a property.
    Search {
        instance: PathBuf,
        /// One of prop, prop1, propx.
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<InstanceDocument, CliError> {
    InstanceDocument::parse(&read(path)?)
}

fn load_allocation(path: &Path) -> Result<AllocationDocument, CliError> {
    AllocationDocument::parse(&read(path)?)
}

pub fn strategy(order: OrderArg, root_rule: RootRuleArg) -> ExplorationStrategy {
    let order = match order {
        OrderArg::Bfs => ExplorationOrder::BreadthFirst,
        OrderArg::Dfs => ExplorationOrder::DepthFirst,
    };
    let root_rule = match root_rule {
        RootRuleArg::OneItem => RootRule::SharesExactlyOneItem,
        RootRuleArg::LowestIndex => RootRule::LowestIndexSharingAgent,
    };
    ExplorationStrategy::new(order, root_rule)
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Solve { instance, strategy_order, root_rule } => {
            commands::solve(&load_instance(instance)?, &strategy(*strategy_order, *root_rule))
        }
        Command::Verify { instance, allocation, property, against, cap } => {
            let checks = Check::parse_list(property)?;
            let against = against.as_deref().map(load_allocation).transpose()?;
            commands::verify(&load_instance(instance)?, &load_allocation(allocation)?, &checks, against.as_ref(), *cap)
        }
        Command::Gen { n, m, min, max, weights, seed } => {
            let weights = match weights {
                WeightsArg::Equal => WeightMode::Equal,
                WeightsArg::Random => WeightMode::Random,
            };
            let doc = commands::gen(&GenParams { n: *n, m: *m, min: *min, max: *max, weights, seed: *seed })?;
            let output = serde_json::to_value(&doc).expect("documents always serialize");
            Ok(Outcome { output, holds: true })
        }
        Command::Search { instance, property, cap } => {
            commands::search(&load_instance(instance)?, commands::parse_search_property(property)?, *cap)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.output).expect("json values serialize");
            let _ = writeln!(out, "{text}");
            outcome.exit_code()
        }
        Err(e) => {
            let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = writeln!(err, "{body}");
            e.exit_code()
        }
    }
}
