mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mset_ekr::search::{GraphKind, TheoremId};

/// Exit statuses shared by every subcommand.
pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "mset-ekr",
    version,
    about = "Intersecting families of multisets: constructions, compression and exact search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form and enumerated size of a named family.
    Size(FamilyArgs),
    /// Write a named family as a family file.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Translate between k-subsets of [m+k-1] and k-multisets of [m].
    Map {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "forward")]
        direction: Direction,
    },
    /// Down-compress a t-intersecting multiset family until [m] is a t-kernel.
    Compress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write one JSON line per member moved by a shift.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Run even when m < 2k - t (every pass is still checked).
        #[arg(long)]
        allow_outside_regime: bool,
    },
    /// Exact maximum search on a disjointness-type graph.
    Search(SearchArgs),
    /// Compare a theorem's bound with its construction and an exact search.
    Verify(VerifyArgs),
    /// Decide whether two family files differ only by a relabeling.
    Isomorphic { a: PathBuf, b: PathBuf },
    /// Run the acceptance criteria.
    Suite {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// star, fixed_multiset, frankl_set, frankl_multiset, hm_set, hm_multiset,
    /// hm_t_set, hm_t_multiset, hit_s, hajnal_rothschild
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    /// Centre of a star.
    #[arg(long, default_value_t = 1)]
    pub x: usize,
    /// Anchor set for hit_s, comma separated (default 1..s).
    #[arg(long, value_delimiter = ',')]
    pub anchor: Option<Vec<usize>>,
    /// Fixed core for fixed_multiset, comma separated, e.g. 1,1.
    #[arg(long, value_delimiter = ',')]
    pub core: Option<Vec<usize>>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: GraphKind,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, value_enum)]
    pub constraint: Option<ConstraintArg>,
    #[arg(long, default_value_t = mset_ekr::search::DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
    #[arg(long, default_value_t = mset_ekr::search::DEFAULT_VERTEX_CAP)]
    pub vertex_cap: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the witness family to this file.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: TheoremId,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Enumerate every optimum and bucket by isomorphism class.
    #[arg(long)]
    pub uniqueness: bool,
    #[arg(long, default_value_t = mset_ekr::search::DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// k-sets to k-multisets.
    Forward,
    /// k-multisets to k-sets.
    Inverse,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintArg {
    /// Intersecting with empty common intersection.
    EmptyCommon,
    /// t-intersecting with common intersection smaller than t.
    NontrivialT,
    /// Induces a bipartite subgraph.
    Bipartite,
    /// No s+1 pairwise disjoint members.
    CliqueFree,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileArg {
    Quick,
    Full,
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse().map_err(|e: mset_ekr::Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: mset_ekr::Error| e.to_string())
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<mset_ekr::Error>() {
        Some(mset_ekr::Error::ScaleExceeded(_)) => EXIT_LIMIT,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Size(args) => commands::size(&args),
        Command::Construct { family, output } => commands::construct(&family, output.as_deref()),
        Command::Map {
            input,
            output,
            direction,
        } => commands::map(&input, output.as_deref(), direction),
        Command::Compress {
            input,
            t,
            output,
            trace,
            allow_outside_regime,
        } => commands::compress(&input, t, output.as_deref(), trace.as_deref(), allow_outside_regime),
        Command::Search(args) => commands::search(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Isomorphic { a, b } => commands::isomorphic(&a, &b),
        Command::Suite { profile, json } => commands::suite(profile, json.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
