use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use condrev::oracle::Predicate;
use condrev::{Error, Operator};

mod commands;

#[derive(Parser)]
#[command(name = "condrev", version, about = "Revise ranked belief states by facts and conditionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file (TOML).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,

    /// Operator: natural, restrained, lexicographic, circledast:<base>, hansson or bg.
    #[arg(long, global = true, value_parser = parse_operator)]
    op: Option<Operator>,

    /// Input formula, `A -> B` or `A => B`; overrides the scenario's input.
    #[arg(long, global = true, allow_hyphen_values = true)]
    input: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized search.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// World count: upper bound for exhaustive search, exact for randomized.
    #[arg(long, global = true)]
    worlds: Option<usize>,

    /// Search every scenario up to `--worlds` instead of sampling.
    #[arg(long, global = true)]
    exhaustive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON.
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleName {
    /// Distance minimization over all TPOs against the circledast result.
    Theorem1,
    /// Postulate characterization of the circledast result.
    Characterization,
    /// Antecedent-wise minimal change among success- and P1-respecting orders.
    Minimality,
    /// Flattest order over the prior's strict part accepting the conditional.
    Flattest,
    /// Natural revision as the closest order with the required first cell.
    ClosestNat,
    /// Hansson's closest TPOs and their common conditional beliefs.
    Hansson,
    /// Restriction of the circledast result to the antecedent worlds.
    Restriction,
}

#[derive(Subcommand)]
enum Command {
    /// Revise the scenario's prior and print the trace.
    Revise,
    /// Check postulates on the revision trace.
    Check {
        /// Comma-separated postulate names, or `all`.
        #[arg(long, default_value = "all")]
        postulates: String,
    },
    /// Run a brute-force oracle and compare it with the constructive result.
    Oracle {
        #[arg(long, value_enum)]
        oracle: OracleName,
    },
    /// Search for a scenario violating a predicate.
    Search {
        /// material-success, recalcitrance, or a postulate name.
        #[arg(long, value_parser = parse_predicate)]
        predicate: Predicate,
        /// Scenarios drawn in randomized mode.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Write the witness scenario here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the bundled example scenarios and a manifest.
    Figures {
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_operator(s: &str) -> Result<Operator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_predicate(s: &str) -> Result<Predicate, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure modes with distinct exit statuses.
#[derive(Debug)]
pub enum Failure {
    /// A check or oracle ran and reported a negative verdict.
    Verdict,
    Error(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InconsistentInput(_) => 3,
        Error::DefinitionalFailure { .. } => 4,
        Error::BoundExceeded { .. } => 5,
        Error::NonUniqueMaximum(_) => 1,
        _ => 2,
    }
}

pub struct Options {
    pub scenario: Option<PathBuf>,
    pub op: Option<Operator>,
    pub input: Option<String>,
    pub format: Format,
    pub seed: Option<u64>,
    pub worlds: Option<usize>,
    pub exhaustive: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        scenario: cli.scenario,
        op: cli.op,
        input: cli.input,
        format: cli.format,
        seed: cli.seed,
        worlds: cli.worlds,
        exhaustive: cli.exhaustive,
    };
    let outcome = match cli.command {
        Command::Revise => commands::revise(&opts),
        Command::Check { postulates } => commands::check(&opts, &postulates),
        Command::Oracle { oracle } => commands::oracle(&opts, oracle),
        Command::Search { predicate, trials, out } => commands::search(&opts, predicate, trials, out.as_deref()),
        Command::Figures { out } => commands::figures(&opts, &out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
