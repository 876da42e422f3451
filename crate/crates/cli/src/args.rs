use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "grunwald", version, about = "Exact finite-group and tame local Galois cohomology reports")]
pub struct Cli {
    /// Output format; the machine section is identical across runs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest group order for which subgroups and tables are built.
    #[arg(long, global = true, default_value_t = 512)]
    pub max_group_order: usize,
    /// Largest brute-force enumeration; also scales the solver budget.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub max_enumeration: u64,
    /// Run the independent brute-force cross-checks.
    #[arg(long, global = true, value_enum, default_value_t = Toggle::On)]
    pub oracle: Toggle,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Group structure reports.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Classes of H¹ restricting to zero on every maximal bicyclic subgroup.
    ShaBic {
        /// Group spec: a file, inline JSON, or a catalog name.
        #[arg(long)]
        group: String,
        /// Module spec: a file or inline JSON.
        #[arg(long)]
        module: String,
    },
    /// The (Z/p)^3 counterexample pipeline.
    #[command(subcommand)]
    Counterexample(CounterexampleCmd),
    /// Tame local H¹, reoccurrence and realizability.
    #[command(subcommand)]
    Local(LocalCmd),
}

#[derive(Subcommand, Debug, Clone)]
pub enum GroupCmd {
    /// Order, invariants, subgroup count and the maximal bicyclic family.
    Analyze {
        /// Group spec: a file, inline JSON, or a catalog name.
        spec: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CounterexampleCmd {
    Verify {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LocalCmd {
    /// All classes of the local H¹.
    H1(LocalArgs),
    /// Compare two data with congruent residues.
    Reoccur(ReoccurArgs),
    /// Whether some class generates the group.
    Realizable(LocalArgs),
}

#[derive(Args, Debug, Clone)]
pub struct LocalArgs {
    /// Datum JSON, e.g. {"kind":"finite","q":7,"n":6}.
    #[arg(long, conflicts_with_all = ["q", "n"])]
    pub datum: Option<String>,
    #[arg(long, requires = "n")]
    pub q: Option<u64>,
    #[arg(long, requires = "q")]
    pub n: Option<u64>,
    #[arg(long)]
    pub group: String,
    /// Action of σ: {"identity":true}, {"conjugation":g} or {"generator_images":[...]}.
    #[arg(long)]
    pub action: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ReoccurArgs {
    #[arg(long, conflicts_with_all = ["q", "n"])]
    pub datum: Option<String>,
    #[arg(long, conflicts_with_all = ["q2", "n"])]
    pub datum2: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub q2: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub action: Option<String>,
}
