use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tracelab::search::SearchSettings;

#[derive(Parser, Debug)]
#[command(name = "tracelab", version, about = "Traces of set families: constructions, checks and exact searches")]
pub struct Cli {
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Where the primary artifact (a family file) is written.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family from a known construction.
    Construct(ConstructArgs),
    /// Largest trace on `a`-sets and whether it reaches `b`.
    Check(CheckArgs),
    /// Exact search for m(n,a,b) - 1 or m~(n,4,c) - 1.
    Search(SearchArgs),
    /// Compare table formulas for m~(n,4,c) with searched values.
    VerifyTable(VerifyArgs),
    /// Compress a family into a down-set by repeated down-shifts.
    Reduce(FileArgs),
    /// Symmetrize a down-set on two elements.
    Symmetrize(SymmetrizeArgs),
    /// Classes of elements with equal links, and the auxiliary family.
    Partition(FileArgs),
    /// Cancellative predicates on a file, or the maximum cancellative family.
    Cancellative(CancellativeArgs),
    /// Turán numbers of K4 and K4- for 3-graphs.
    Ex3(Ex3Args),
    /// Both sides of m~(n,4,c) = m(n,4,c+5) - n - 1.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Budget {
    #[arg(long, default_value_t = 100_000_000)]
    pub budget_nodes: u64,

    #[arg(long, default_value_t = 300.0)]
    pub budget_secs: f64,

    #[arg(long, env = "TRACELAB_THREADS", default_value_t = 1)]
    pub threads: usize,

    /// Turn off isomorph rejection.
    #[arg(long)]
    pub no_isomorph: bool,

    /// Bound by the count of live candidates only.
    #[arg(long)]
    pub no_window_bound: bool,
}

impl Budget {
    pub fn settings(&self) -> SearchSettings {
        SearchSettings {
            budget_nodes: self.budget_nodes,
            budget_secs: self.budget_secs,
            threads: self.threads.max(1),
            isomorph_rejection: !self.no_isomorph,
            window_bound: !self.no_window_bound,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Partite,
    Turan,
    Special6,
    Downclosure,
    Random,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,

    #[arg(long)]
    pub n: Option<usize>,

    /// Number of parts of a partite family.
    #[arg(long)]
    pub l: Option<usize>,

    /// Number of parts of a Turán graph.
    #[arg(long)]
    pub r: Option<usize>,

    /// Explicit part sizes, largest first.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,

    /// Family file whose down-closure is taken.
    #[arg(long)]
    pub input: Option<PathBuf>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random generators of a random down-set.
    #[arg(long, default_value_t = 8)]
    pub generators: usize,

    /// Largest generator size of a random down-set.
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub file: PathBuf,

    #[arg(long)]
    pub a: Option<usize>,

    #[arg(long)]
    pub b: Option<usize>,

    /// Hook load; implies a = 4 and b = c + 5.
    #[arg(long)]
    pub c: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long)]
    pub a: Option<usize>,

    #[arg(long)]
    pub b: Option<usize>,

    #[arg(long)]
    pub c: Option<usize>,

    /// full-downset, tilde-complete or antichain.
    #[arg(long)]
    pub mode: Option<String>,

    /// Query JSON, inline or as a path.
    #[arg(long)]
    pub query: Option<String>,

    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 5, 6, 7])]
    pub rows: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_values_t = [5, 6, 7])]
    pub n: Vec<usize>,

    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Args, Debug)]
pub struct FileArgs {
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct SymmetrizeArgs {
    pub file: PathBuf,

    /// 1-indexed element whose link is copied.
    #[arg(long)]
    pub x: usize,

    /// 1-indexed element that receives the link.
    #[arg(long)]
    pub y: usize,

    /// Orient the step so the family does not shrink.
    #[arg(long)]
    pub profitable: bool,
}

#[derive(Args, Debug)]
pub struct CancellativeArgs {
    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long)]
    pub l: usize,

    /// Check the uniform family in this file instead of searching.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Use the stronger union-free condition.
    #[arg(long)]
    pub union_free: bool,

    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Args, Debug)]
pub struct Ex3Args {
    #[arg(long)]
    pub n: usize,

    /// k4 or k4-.
    #[arg(long, default_value = "k4")]
    pub pattern: String,

    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Args, Debug)]
pub struct CrosscheckArgs {
    #[arg(long)]
    pub n: usize,

    #[arg(long)]
    pub c: usize,

    #[command(flatten)]
    pub budget: Budget,
}
