//! Command-line front end.
//!
//! Every command writes a plain-text report whose first line records the
//! tool version, the seed and the caps in effect. Exit status is 0 on
//! success, 1 on a domain error or failed check, and 2 on a usage error.

mod commands;
pub mod selftest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::automata::AutomataError;
use crate::diophantine::DiophantineError;
use crate::groups::GroupError;
use crate::stratify::StratifyError;
use crate::vecset::VecSetError;
use crate::witness::WitnessError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    VecSet(#[from] VecSetError),
    #[error(transparent)]
    Diophantine(#[from] DiophantineError),
    #[error(transparent)]
    Stratify(#[from] StratifyError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polycf", version, about = "Semilinear sets, pushdown recognizers and group word problems")]
pub struct Cli {
    /// Seed for randomized suites; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Semilinear set presentations.
    Slset(SlsetArgs),
    /// Nonnegative solutions of integer linear systems.
    Dioph(DiophArgs),
    /// The families S^(n,k) and their covers.
    Family(FamilyArgs),
    /// Pushdown automata and k-CF recognizers.
    Pda(PdaArgs),
    /// Group word problems.
    Group(GroupArgs),
    /// Bounded Parikh images.
    Parikh(ParikhArgs),
    /// Witness families and refutations.
    Witness(WitnessArgs),
    /// Runs the invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct SlsetArgs {
    #[command(subcommand)]
    pub action: SlsetAction,
}

#[derive(Debug, Subcommand)]
pub enum SlsetAction {
    /// Prints a presentation with per-component dimensions.
    Show {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Membership with a certificate.
    Member {
        #[arg(long = "in")]
        input: PathBuf,
        /// Space-separated entries.
        #[arg(long)]
        vec: String,
    },
    /// Presentation of the intersection of all inputs.
    Intersect {
        #[arg(long = "in", num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Members inside [0, box]^r.
    Box {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "box")]
        bound: u64,
    },
    /// Applies a permutation given by 1-based images.
    Permute {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        tau: Vec<usize>,
    },
}

#[derive(Debug, Args)]
pub struct DiophArgs {
    #[command(subcommand)]
    pub action: DiophAction,
}

#[derive(Debug, Subcommand)]
pub enum DiophAction {
    /// Hilbert basis, plus minimal solutions when the file has an `rhs` line.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Bound on the search frontier.
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyEmit {
    Slset,
    PredicateCheck,
    Cover,
    Stratification,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = FamilyEmit::Slset)]
    pub emit: FamilyEmit,
    #[arg(long = "box", default_value_t = 3)]
    pub bound: u64,
}

#[derive(Debug, Args)]
pub struct PdaArgs {
    #[command(subcommand)]
    pub action: PdaAction,
}

#[derive(Debug, Subcommand)]
pub enum PdaAction {
    /// Runs a PDA file on a word.
    Run {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Runs a DFA file on a word.
    Dfa {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Runs a built-in recognizer: `zk:K`, `mk-wreath:K` or `mk-abc:K`.
    Builtin {
        #[arg(long)]
        name: String,
        #[arg(long)]
        word: String,
    },
    /// Prints a built-in recognizer's components in the PDA text format.
    Emit {
        #[arg(long)]
        name: String,
    },
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[command(subcommand)]
    pub action: GroupAction,
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    /// Evaluates a word.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
    },
    /// Checks that the defining relators evaluate to the identity.
    Relators {
        #[arg(long)]
        group: String,
    },
    /// Checks `w·w⁻¹ = 1` and multiplicativity on random words.
    Random {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        len: usize,
    },
}

#[derive(Debug, Args)]
pub struct ParikhArgs {
    /// Group whose word problem is sampled.
    #[arg(long, conflicts_with = "machine")]
    pub group: Option<String>,
    /// PDA file whose language is sampled.
    #[arg(long)]
    pub machine: Option<PathBuf>,
    /// Comma-separated words `w₁,…,w_n`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub words: Vec<String>,
    #[arg(long = "box", default_value_t = 3)]
    pub bound: u64,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(subcommand)]
    pub action: WitnessAction,
}

#[derive(Debug, Subcommand)]
pub enum WitnessAction {
    /// Growth data and witness family for a Gc-group.
    Gc {
        /// Coefficients `c₀,…,c_s`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        c: Vec<i64>,
        #[arg(long, default_value_t = 10)]
        depth: u64,
        #[arg(long, default_value_t = 1024)]
        cap: u64,
        /// Witness levels `1..=levels` to check.
        #[arg(long, default_value_t = 4)]
        levels: u64,
    },
    /// Parikh image of the wreath-product test language.
    Wreath {
        /// Prime order of `b`, or `Z`.
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        cap: u64,
    },
    /// Parikh image of the `abc` test language.
    Abc {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        cap: u64,
    },
    /// The constant bounding complex-period combinations.
    Constant {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Separates a presentation in N₀² from {(n, 2ⁿ) : 1 ≤ n ≤ 1024}.
    Refute {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        depth: u64,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Scale of the box-based suites.
    #[arg(long = "box", default_value_t = 5)]
    pub bound: u64,
}

/// Report text under construction.
pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str, seed: u64, caps: &[(&str, String)]) -> Self {
        let caps: Vec<String> = caps.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut text = format!("# polycf {VERSION} command={command} seed={seed}");
        if !caps.is_empty() {
            text.push_str(&format!(" caps[{}]", caps.join(" ")));
        }
        text.push('\n');
        Report { text }
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

/// Outcome of a command: the report and whether every check passed.
pub struct Outcome {
    pub report: Report,
    pub ok: bool,
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Attaches the file name to parse errors.
pub(crate) fn in_file<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input { path: path.to_path_buf(), message: e.to_string() })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    commands::dispatch(cli)
}

/// Parses `args`, runs the command, prints or writes the report, and
/// returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.report {
                if let Err(source) = std::fs::write(path, outcome.report.text()) {
                    eprintln!("error: {}", CliError::Io { path: path.clone(), source });
                    return 1;
                }
            } else {
                print!("{}", outcome.report.text());
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
