use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "modp-satake", version, about = "Mod-p Satake transforms and Jacquet cohomology for GL2(Q_p)")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true, default_value_t = modp_satake_core::verify::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    /// Work over F_{p^k}.
    #[arg(long = "ext-degree", default_value_t = 1)]
    pub ext_degree: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Verb {
    /// Satake image of a Hecke operator as a Laurent polynomial in X.
    Satake {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        e: u32,
        /// `phi^n` or a polynomial such as `1+2*phi-phi^2`.
        #[arg(long, default_value = "phi")]
        op: String,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        /// Fixed truncation depth instead of the derived one.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Jacquet cohomology of irreducible representations.
    Table1 {
        #[command(flatten)]
        field: FieldArgs,
        /// All four rows for the given parameters.
        #[arg(long, conflicts_with = "kind")]
        all: bool,
        #[arg(long = "type", value_enum)]
        kind: Option<RowKind>,
        /// `lambda,e` for μ_λ ω^e; λ is an integer or a coefficient list like [1,2].
        #[arg(long)]
        chi: Option<String>,
        /// Second character of a principal series.
        #[arg(long)]
        chi2: Option<String>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Cohomology of K_U with Hecke matrices.
    Cohomology {
        #[command(flatten)]
        field: FieldArgs,
        /// `r,e` for Sym^r ⊗ det^e.
        #[arg(long, conflicts_with = "chi")]
        weight: Option<String>,
        /// Inflated character χ1 ⊠ χ2: `lambda,e` for χ1.
        #[arg(long)]
        chi: Option<String>,
        /// `lambda,e` for χ2 (default trivial).
        #[arg(long, requires = "chi")]
        chi2: Option<String>,
    },
    /// The modulus character read off from top-degree cohomology.
    Delta {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Runs the acceptance checks and compares golden files.
    Verify {
        /// Rewrite the golden files instead of comparing them.
        #[arg(long)]
        bless: bool,
        /// Only these criteria, e.g. `1,5,7`.
        #[arg(long, value_delimiter = ',', conflicts_with = "goldens_only")]
        criteria: Option<Vec<u8>>,
        #[arg(long)]
        goldens_only: bool,
        #[arg(long)]
        no_goldens: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RowKind {
    Character,
    Special,
    Principal,
    Supersingular,
}
