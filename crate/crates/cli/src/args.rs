use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use comblab::combs::Bound;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Parser)]
#[command(name = "comblab", version, about = "Verify comb, weave, grid and cograph configurations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Input file; standard input when absent or `-`.
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Output file; standard output when absent or `-`.
    #[arg(long = "out", global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Violations recorded in a report before truncating.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_violations: usize,

    /// Largest family size enumerated by the consistency clauses.
    #[arg(long, global = true)]
    pub cap: Option<usize>,

    /// Print DOT instead of JSON where a graph or tree is produced.
    #[arg(long, global = true)]
    pub dot: bool,

    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ClassArg {
    Up,
    Right,
    WideRight,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the combs of a class at a depth.
    EnumCombs {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(short, long, default_value = "omega")]
        n: Bound,
        /// Wide combs must split into narrow right combs.
        #[arg(long)]
        literal: bool,
        #[arg(long)]
        max_size: usize,
    },
    /// Decide whether a node set is a comb and print its certificate.
    IsComb {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(short, long, default_value = "omega")]
        n: Bound,
        #[arg(long)]
        literal: bool,
        /// Nodes in compact form, `-` for the empty node.
        #[arg(required = true, allow_hyphen_values = true)]
        nodes: Vec<String>,
    },
    /// Classify a pair of distinct equal-depth nodes as UpOne or WideRightOne.
    ClassifyPair {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Check that a set system indexed by a level is a (strong) (k,m,n)-weave.
    CheckWeave {
        #[arg(long)]
        depth: usize,
        #[arg(short)]
        k: usize,
        #[arg(short, default_value = "omega")]
        m: Bound,
        #[arg(short, default_value = "omega")]
        n: Bound,
        #[arg(long)]
        strong: bool,
        #[arg(long)]
        literal: bool,
    },
    /// Check that a set system indexed by a square box is a (strong) k-grid.
    CheckGrid {
        #[arg(long)]
        side: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        strong: bool,
    },
    /// Check that a set system indexed by vertices is a pattern for a graph.
    CheckGraphPattern {
        /// Graph JSON `{"n":…,"edges":[…]}`.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Decide whether a template is realizable and print a realizing system.
    Realizable,
    /// Build a canonical witness.
    Witness {
        #[command(subcommand)]
        kind: WitnessArg,
    },
    /// Print the strongification map, or pull a weave on level 2d back to d.
    Strongify {
        #[arg(long)]
        depth: usize,
        /// Read a weave on level 2d from the input and pull it back.
        #[arg(long)]
        apply: bool,
    },
    /// Pull a weave on level `depth` back to `depth0` along a prefix map.
    Pullback {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        depth0: usize,
        /// JSON `[["σ","f(σ)"],…]`; by default σ is padded with `--pad`.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Letter code appended to reach `depth`.
        #[arg(long, default_value_t = 0)]
        pad: u8,
    },
    /// Print the grid embedding of a level.
    GridEmbed {
        #[arg(long)]
        depth: usize,
    },
    /// Pull a grid on the 4^d box back to a weave on level d.
    GridToWeave {
        #[arg(long)]
        depth: usize,
    },
    /// Print the infinitesimal scaling of a box, or apply it to a grid.
    EpsScale {
        #[arg(long)]
        side: usize,
        #[arg(long)]
        apply: bool,
    },
    /// Recognize a cograph, evaluate a cotree, or draw a random one.
    Cotree {
        /// Read a cotree and print its graph.
        #[arg(long, conflicts_with = "random")]
        eval: bool,
        /// Print a random cotree with this many leaves.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Search a graph for an induced path on four vertices.
    FindP4,
    /// The comb graph of a level with its cotree.
    CombGraph {
        #[arg(long)]
        depth: usize,
    },
    /// Embed the cograph of a cotree into a level.
    EmbedCograph,
    /// Move patterns between comb graphs, cographs and weaves.
    Bridge {
        #[command(subcommand)]
        direction: BridgeArg,
    },
    /// The finite edge pattern of the triangle-free random graph argument.
    TriangleFreeDemo {
        #[arg(long)]
        len: usize,
    },
    /// Build a chain of binary strings meeting each requirement.
    GenericChain {
        #[arg(long, default_value = "")]
        start: String,
        /// `len>=N`, `len<N` or `contains:X`; repeatable.
        #[arg(long = "require")]
        requirements: Vec<String>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = comblab::genericity::DEFAULT_HORIZON)]
        horizon: usize,
    },
    /// Run the full lemma suite.
    VerifyPaper {
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        /// Inject the mutation chosen by this seed; the run should fail.
        #[arg(long)]
        mutate: Option<u64>,
        /// Smaller random corpora.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum WitnessArg {
    Weave {
        #[arg(long)]
        depth: usize,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short, default_value = "omega")]
        m: Bound,
        #[arg(short, default_value = "omega")]
        n: Bound,
        /// Make every (k−1)-family consistent.
        #[arg(long)]
        genuine_k: bool,
    },
    Grid {
        #[arg(long)]
        side: usize,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        strong: bool,
    },
    /// Materialized pattern for the graph read from the input.
    Graph,
}

#[derive(Debug, Subcommand)]
pub enum BridgeArg {
    /// Pattern for the comb graph of depth d ↦ weave on level d.
    GraphToWeave {
        #[arg(long)]
        depth: usize,
    },
    /// Weave on level d ↦ pattern for the cograph of a cotree.
    WeaveToGraph {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        cotree: PathBuf,
    },
}
