use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use patfreq::{Pattern, Permutation};

/// Permutation pattern frequency sequences, layered optima and poset checks.
///
/// Results go to stdout, progress to stderr (`RUST_LOG` controls verbosity).
/// Exit codes: 0 success, 1 unexpected verification failure, 2 usage,
/// 3 enumeration bound refused.
#[derive(Parser, Debug)]
#[command(name = "patfreq", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for exhaustive enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest n allowed for exhaustive enumeration over S_n.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_n: usize,

    /// Allow --max-n above 13.
    #[arg(long, global = true)]
    pub override_bound: bool,

    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `l=<L>`: the pattern 1(L+1)L...2.
#[derive(Clone, Copy, Debug)]
pub struct Family {
    pub l: usize,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let l = s
            .strip_prefix("l=")
            .ok_or_else(|| format!("expected l=<L>, got {s:?}"))?
            .parse()
            .map_err(|e| format!("bad l in {s:?}: {e}"))?;
        Ok(Family { l })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of copies of pattern Q in permutation P.
    Count {
        perm: Permutation,
        pattern: Pattern,
    },
    /// Frequency sequence of a pattern over S_n.
    Freq {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: Option<Pattern>,
        /// The pattern 1(l+1)l...2, written l=<L>.
        #[arg(long)]
        family: Option<Family>,
    },
    /// Rows (n, M_n, k_n, l_n) of the layered recursion.
    Table {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Layer profile of the canonical optimal permutation.
    Profile {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
    },
    /// A permutation of length n with exactly c copies of 132, or UNREALIZABLE.
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: u64,
        #[arg(long, default_value = "132")]
        pattern: Pattern,
    },
    /// A 132-avoiding permutation of length n with c inversions.
    #[command(name = "inv-no-132")]
    InvNo132 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: u64,
    },
    /// Poset operations. Elements are labeled 0..n, value v becoming v-1.
    Poset {
        /// A permutation, or a layer profile such as 3,2,4 with --profile.
        input: String,
        /// Read the input as a layer profile.
        #[arg(long)]
        profile: bool,
        #[command(subcommand)]
        op: PosetOp,
    },
    /// Re-check the structural claims and print a JSON ledger.
    Verify {
        #[arg(long, conflicts_with = "claim")]
        all: bool,
        #[arg(long)]
        claim: Vec<String>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        dp_nmax: Option<usize>,
        #[arg(long)]
        brute_nmax: Option<usize>,
        #[arg(long)]
        structure_nmax: Option<usize>,
        #[arg(long)]
        poset_nmax: Option<usize>,
        /// Comma-separated l values for the recursion claims.
        #[arg(long, value_delimiter = ',')]
        l: Option<Vec<usize>>,
    },
    /// Classify n = l+1..=nmax for 1(l+1)l...2 as IZ or NIZ.
    Conjecture {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Regenerate the 132 base table used by the realizer.
    BaseTable {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum PosetOp {
    /// Cover relations as JSON.
    Show,
    /// Maximal elements.
    Max,
    /// Open down-set of an element.
    DownSet {
        #[arg(long)]
        x: usize,
    },
    /// The poset without its maximal elements.
    StripMax,
    IsLot,
    /// Layer profile, or null when not layered.
    Layered,
    Mu,
    /// Copies of A_1 + A_l, optionally meeting --require and avoiding --forbid.
    Count {
        #[arg(long)]
        l: usize,
        #[arg(long, value_delimiter = ',')]
        require: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<usize>,
    },
    /// Give maximal element x the down-set of maximal element y.
    Reassign {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// First l-decomposition, or null.
    Decompose {
        #[arg(long)]
        l: usize,
    },
}
