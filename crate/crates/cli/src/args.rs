use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lowerset::CountMethod;

/// Inclusive integer range written `a..b`, or a single value `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad integer '{t}': {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Dfs,
    Auto,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Dfs => CountMethod::Dfs,
            Method::Auto => CountMethod::Auto,
        }
    }
}

/// Count, enumerate and bound lower sets; certify universal discretization point sets.
///
/// The DFS node budget defaults to 10^8 and can be overridden with LOWERSET_BUDGET.
#[derive(Debug, Parser)]
#[command(name = "lowerset", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts p_d(n) as a table.
    Count(CountArgs),
    /// List every lower set of size n, one JSON array per line.
    Enumerate(EnumerateArgs),
    /// Check every explicit bound against exact counts.
    Bounds(CountArgs),
    /// Certify or search for a universal discretization point set.
    Discretize(DiscretizeArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Dimension or inclusive range `a..b`.
    #[arg(long)]
    pub d: Span,
    /// Size or inclusive range `a..b`.
    #[arg(long)]
    pub n: Span,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: Method,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DiscretizeArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Number of points to certify.
    #[arg(long, conflicts_with = "search")]
    pub m: Option<usize>,
    /// Search for the smallest qualifying number of points.
    #[arg(long)]
    pub search: bool,
    /// Use the equispaced tensor grid (m must be a perfect d-th power; n per axis if --m is absent).
    #[arg(long, conflicts_with = "search")]
    pub grid: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random point sets drawn per probed m.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = lowerset::discretization::DEFAULT_C1)]
    pub c1: f64,
    #[arg(long, default_value_t = lowerset::discretization::DEFAULT_C2)]
    pub c2: f64,
    /// Largest m the search may try [default: ceil(32 n ln(n p_d(n)))].
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Also write the certified point set as CSV.
    #[arg(long)]
    pub points_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}
