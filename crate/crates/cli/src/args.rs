use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "mvw",
    version,
    about = "Finite monoids, omega-identities and the join of R and L"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    /// Class budget for quotient constructions.
    #[arg(long, env = "MVW_BUDGET_CLASSES", global = true, default_value_t = mvw_core::words::DEFAULT_CLASS_CAP)]
    pub max_classes: usize,

    /// Budget for |M|^|X| in identity checks.
    #[arg(long, global = true, default_value_t = mvw_core::omega::DEFAULT_ASSIGNMENT_CAP)]
    pub max_assignments: u64,

    /// Largest ambient monoid for division searches.
    #[arg(long, global = true, default_value_t = mvw_core::monoid::DEFAULT_DIVISION_CAP)]
    pub max_division: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "R")]
    R,
    #[value(name = "L")]
    L,
    #[value(name = "RL")]
    Rl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "R")]
    R,
    #[value(name = "L")]
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Congruence,
    Theorem,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operations on a single monoid.
    #[command(subcommand)]
    Monoid(MonoidCommand),
    /// Word congruences.
    #[command(subcommand)]
    Words(WordsCommand),
    /// Quotients of A* by the word congruences.
    #[command(subcommand)]
    Quotient(QuotientCommand),
    /// R- or L-factorization of a word under a homomorphism.
    Factorize(FactorizeArgs),
    /// Align two equivalent words on a common marker skeleton.
    Align(PairArgs),
    /// Substitution chain between two aligned words.
    Chain(PairArgs),
    /// Constructive quotient map A*/~n -> M.
    #[command(subcommand)]
    Theorem(TheoremCommand),
    /// Regular languages given as DFAs.
    #[command(subcommand)]
    Dfa(DfaCommand),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum MonoidCommand {
    /// Decide an identity ("R", "L", "W" or "u = v").
    Check {
        /// Monoid file, or `builtin:NAME`.
        #[arg(long)]
        file: String,
        #[arg(long, conflicts_with = "identity_file")]
        identity: Option<String>,
        #[arg(long)]
        identity_file: Option<PathBuf>,
    },
    /// Green's R- and L-classes.
    Green {
        #[arg(long)]
        file: String,
    },
    /// Membership in R, L and W, with R-/L-triviality.
    Variety {
        #[arg(long)]
        file: String,
    },
    /// All monoids of an order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
    },
    /// Whether `--divisor` divides `--file`.
    Divides {
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        file: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum WordsCommand {
    /// Decide u ~n v.
    Equiv {
        #[arg(long)]
        alphabet: String,
        #[arg(short = 'n', long = "level")]
        level: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::R)]
        mode: ModeArg,
        u: String,
        v: String,
    },
    /// Canonical signature of a word.
    Signature {
        #[arg(long)]
        alphabet: String,
        #[arg(short = 'n', long = "level")]
        level: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::R)]
        mode: ModeArg,
        word: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum QuotientCommand {
    Build {
        #[arg(long)]
        alphabet: String,
        #[arg(short = 'n', long = "level")]
        level: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Rl)]
        mode: ModeArg,
    },
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    #[arg(long)]
    pub monoid: String,
    /// Letter images, e.g. "a=1,b=ab".
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub word: String,
    #[arg(long, value_enum, default_value_t = KindArg::R)]
    pub kind: KindArg,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub monoid: String,
    #[arg(long)]
    pub map: String,
    #[arg(short = 'n', long = "level")]
    pub level: Option<u32>,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Subcommand)]
pub enum TheoremCommand {
    QuotientHom {
        #[arg(long)]
        monoid: String,
        /// Comma-separated element labels or indices.
        #[arg(long, default_value = "")]
        generators: String,
        #[arg(short = 'n', long = "level")]
        level: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DfaCommand {
    /// Syntactic monoid membership in R, L and W.
    Classify {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub max_order: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Generated pairs (per monoid for the theorem suite).
    #[arg(long)]
    pub pairs: Option<usize>,
}
