use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "abduce", version, about = "ABox abduction over inconsistent DL-Lite and EL-bot knowledge bases")]
pub struct Cli {
    /// Upper bound on worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classical consistency of the KB.
    Check(KbArg),
    /// Repairs (maximal consistent ABox subsets).
    Repairs(KbArg),
    /// Minimal conflicts of the ABox.
    Conflicts(KbArg),
    /// Entailment of an assertion under a semantics.
    Entail(EntailArgs),
    /// Whether a hypothesis with the requested properties exists.
    Exist(ProblemArgs),
    /// Checks one hypothesis.
    Verify(VerifyArgs),
    /// Lists hypotheses in canonical order.
    Enumerate(EnumerateArgs),
    /// Builds an abduction instance from a digraph, CNF or QBF source.
    Gen(GenArgs),
    /// Shows a built-in worked instance and checks it against the engine.
    Example(ExampleArgs),
    /// Fixture suite plus seeded fuzz rounds against brute-force oracles.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct KbArg {
    /// KB file, `-` for standard input.
    #[arg(long)]
    pub kb: PathBuf,
}

#[derive(Args, Debug)]
pub struct EntailArgs {
    #[arg(long)]
    pub kb: PathBuf,
    /// Assertion such as `A(a)` or `r(a, b)`.
    #[arg(long)]
    pub obs: String,
    #[arg(long, value_parser = ["classical", "brave", "ar"])]
    pub semantics: String,
}

#[derive(Args, Debug)]
pub struct ProblemArgs {
    #[arg(long)]
    pub kb: PathBuf,
    /// Concept assertion to explain, such as `A(a)`.
    #[arg(long)]
    pub obs: String,
    #[arg(long, value_parser = ["classical", "brave", "ar"])]
    pub semantics: String,
    /// Signature file; also turns on the signature restriction.
    #[arg(long)]
    pub signature: Option<PathBuf>,
    #[arg(long)]
    pub nontrivial: bool,
    #[arg(long)]
    pub conflict_confining: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Hypothesis ABox file, `-` for standard input.
    #[arg(long)]
    pub hyp: PathBuf,
    #[arg(long, default_value = "none", value_parser = ["none", "subset", "card", "subset-c", "card-c"])]
    pub minimality: String,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 100)]
    pub limit: usize,
    #[arg(long, default_value = "subset", value_parser = ["none", "subset", "card", "subset-c", "card-c"])]
    pub minimality: String,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["cnf", "qbf", "graph"]))]
pub struct GenArgs {
    #[arg(long)]
    pub mode: String,
    /// DIMACS file (`c form=dnf` marks a DNF).
    #[arg(long)]
    pub cnf: Option<PathBuf>,
    /// QDIMACS file.
    #[arg(long)]
    pub qbf: Option<PathBuf>,
    /// Edge list with an `s=<node> t=<node>` header.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Clause subset for mus-subset-min, 1-based and comma-separated; default all.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    pub name: String,
    /// Also write the instance files to this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub rounds: usize,
}
