use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ngbounds::search::KIndex;

#[derive(Debug, Parser)]
#[command(
    name = "ngbounds",
    version,
    about = "Spectral Nordhaus-Gaddum bounds: spectra, constructions, checks and exact search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of each input graph and of its complement.
    Spectrum(SpectrumArgs),
    /// Build a named family member.
    Family(FamilyArgs),
    /// Spectrum of a block graph through its quotient matrix.
    Quotient(QuotientArgs),
    /// Check every inequality on each input graph, or on all graphs of one order.
    Verify(VerifyArgs),
    /// Exact f_k(n) by exhaustive search.
    Search(SearchArgs),
    /// Seeded random lower-bound probe for f_k(n).
    Probe(ProbeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct GraphSource {
    /// A single graph6 string.
    #[arg(long, value_name = "G6", group = "source")]
    pub graph6: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long, value_name = "FILE", group = "source")]
    pub input: Option<PathBuf>,
    /// Read graph6 lines from standard input.
    #[arg(long, group = "source")]
    pub stdin: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyKind {
    Complete,
    Empty,
    #[value(alias = "complete-split")]
    CompleteSplit,
    Turan,
    #[value(alias = "four-block")]
    FourBlock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Graph6,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub kind: FamilyKind,
    /// Order.
    #[arg(long)]
    pub n: usize,
    /// Clique size for complete_split.
    #[arg(long)]
    pub r: Option<usize>,
    /// Number of classes for turan.
    #[arg(long)]
    pub k: Option<usize>,
    /// Include the graph in this encoding.
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    /// Report closed-form eigenvalues next to computed ones.
    #[arg(long)]
    pub closed_forms: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    /// Number of classes; must match the length of --inner when given.
    #[arg(long)]
    pub k: Option<usize>,
    /// Common class size.
    #[arg(long)]
    pub t: usize,
    /// One letter per class: C for a clique, I for an independent set.
    #[arg(long)]
    pub inner: String,
    /// Joined class pairs, 1-based: `12,23,34` or `1-2,2-3`.
    #[arg(long, default_value = "")]
    pub join: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[group(id = "verify_source", required = true, multiple = false)]
pub struct VerifySource {
    /// A single graph6 string.
    #[arg(long, value_name = "G6", group = "verify_source")]
    pub graph6: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long, value_name = "FILE", group = "verify_source")]
    pub input: Option<PathBuf>,
    /// Read graph6 lines from standard input.
    #[arg(long, group = "verify_source")]
    pub stdin: bool,
    /// Every labelled graph of this order (at most 8).
    #[arg(long, value_name = "N", group = "verify_source")]
    pub exhaustive: Option<usize>,
}

impl VerifySource {
    pub fn graphs(&self) -> Option<GraphSource> {
        if self.exhaustive.is_some() {
            return None;
        }
        Some(GraphSource {
            graph6: self.graph6.clone(),
            input: self.input.clone(),
            stdin: self.stdin,
        })
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: VerifySource,
    /// Worker threads for --exhaustive; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// An eigenvalue index given as `3`, `n` or `n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexArg(pub KIndex);

impl FromStr for IndexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("invalid index {s:?}, expected a positive integer, n, or n-j");
        if s == "n" {
            return Ok(IndexArg(KIndex::FromEnd(0)));
        }
        if let Some(j) = s.strip_prefix("n-") {
            return j
                .parse()
                .map(|j| IndexArg(KIndex::FromEnd(j)))
                .map_err(|_| bad());
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(IndexArg(KIndex::Index(k))),
            _ => Err(bad()),
        }
    }
}

/// An order or an inclusive order range such as `2-7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRange(pub std::ops::RangeInclusive<usize>);

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid order {s:?}, expected N or A-B");
        let (a, b) = match s.split_once('-') {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let n = s.trim().parse().map_err(|_| bad())?;
                (n, n)
            }
        };
        if a > b {
            return Err(bad());
        }
        Ok(OrderRange(a..=b))
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Order, or a range like `2-7` with --table.
    #[arg(long)]
    pub n: OrderRange,
    /// Eigenvalue index: an integer, `n`, or `n-j`. Repeat or comma-separate with --table.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<IndexArg>,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Allow n = 8 (2^28 graphs).
    #[arg(long)]
    pub force: bool,
    /// Report wall time in the `seconds` field (otherwise null, keeping output reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Emit a table of exact values with reference bounds and margins.
    #[arg(long)]
    pub table: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub n: usize,
    /// Eigenvalue index: an integer, `n`, or `n-j`.
    #[arg(long)]
    pub k: IndexArg,
    /// Number of random graphs besides the planted constructions.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
