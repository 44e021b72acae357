use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "divforge", version, about = "Non-special divisors on curves over small finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Curve descriptor JSON file, or the name of a bundled curve.
    #[arg(long, global = true)]
    pub curve: Option<String>,

    /// Write the output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; `tables` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Defect table convention, e.g. `branch=both` or `branch=minus,threshold=strict`.
    #[arg(long, global = true, default_value = "branch=both")]
    pub convention: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Point counts, L-polynomial, class number and effective divisor counts.
    Zeta {
        /// Number of levels N_1..N_r to report (default g + 1).
        #[arg(long)]
        levels: Option<u32>,
    },
    /// Closed places of a given degree.
    Places {
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// Existence verdicts for non-special divisors of degree g and g-1.
    Criteria {
        /// Use the L-polynomial from a previous `zeta` output instead of a curve.
        #[arg(long)]
        zeta: Option<PathBuf>,
    },
    /// Regenerate the defect tables and compare with the bundled rows.
    Tables,
    /// Build a non-special divisor.
    Construct {
        #[arg(long, value_enum, default_value_t = Method::Kummer)]
        method: Method,
        /// Base field size for the norm-trace and hyperelliptic families.
        #[arg(long)]
        q: Option<u64>,
        /// Extension degree for the norm-trace family.
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Lower the degree g result to g - 1 by removing a rational place.
        #[arg(long)]
        reduce: bool,
        /// Divisor Q for exdecons (JSON file); default 0.
        #[arg(long)]
        q_divisor: Option<PathBuf>,
        /// Divisor G for exdecons (JSON file); default 2 P_inf.
        #[arg(long)]
        g_divisor: Option<PathBuf>,
    },
    /// Riemann-Roch dimension of a divisor.
    Rrdim {
        /// Divisor JSON file (a `construct` output is accepted too).
        #[arg(long)]
        divisor: PathBuf,
    },
    /// Weierstrass semigroups at totally ramified places of x^m = prod (y - a_i).
    Semigroup {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
        /// Comma separated multiplicities to test for membership.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u64>>,
        /// Field size for membership tests.
        #[arg(long)]
        q: Option<u64>,
        /// Number of places for the generating set.
        #[arg(long)]
        places: Option<usize>,
    },
    /// Degree bookkeeping in the tower, with optional enumeration.
    Tower {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Enumerate places of the level and compare the L-polynomial.
        #[arg(long)]
        enumerate: bool,
    },
    /// Run every invariant suite.
    Verify {
        /// Restrict to one suite.
        #[arg(long)]
        suite: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Kummer,
    Greedy,
    Hyperelliptic,
    NormTrace,
    Exdecons,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Zeta { .. } => "zeta",
            Command::Places { .. } => "places",
            Command::Criteria { .. } => "criteria",
            Command::Tables => "tables",
            Command::Construct { .. } => "construct",
            Command::Rrdim { .. } => "rrdim",
            Command::Semigroup { .. } => "semigroup",
            Command::Tower { .. } => "tower",
            Command::Verify { .. } => "verify",
        }
    }
}
