use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact Hochschild, relative and cyclic cohomology of finite-dimensional algebras.
///
/// Algebras are builtin names (matrix:2, upper_triangular:2, scalars,
/// dual_numbers, zero_product:1, truncated_polynomial:3, optionally with
/// an @Qi suffix), inline JSON or paths to JSON files.
#[derive(Debug, Parser)]
#[command(name = "relcoh", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Highest degree to compute
    #[arg(long, global = true, default_value_t = 3)]
    pub max_degree: usize,

    /// Largest cochain space, in coordinates, that may be built
    #[arg(
        long,
        global = true,
        env = "RELCOH_SIZE_BUDGET",
        default_value_t = 200_000,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub size_budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Report theorem checks even when hypotheses are not certified
    #[arg(long, global = true)]
    pub skip_certification: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Input {
    /// Algebra: builtin name, inline JSON or JSON file
    #[arg(long, conflicts_with = "parts")]
    pub algebra: Option<String>,

    /// Comma-separated unital algebras, combined into their direct sum
    #[arg(long)]
    pub parts: Option<String>,

    /// Bimodule: dual, regular, inline JSON or JSON file
    #[arg(long)]
    pub module: Option<String>,

    /// Subalgebra: unit, whole, diagonal, span:i,j, block:i, inline JSON or JSON file
    #[arg(long)]
    pub subalgebra: Option<String>,

    /// Ideal: whole, zero, span:i,j, block:i, inline JSON or JSON file
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Theorem id: 1.6, 1.7, 1.10, 2.1, 2.2, 2.4, 4.1, 4.2, 4.3, 4.4 or 4.7
    pub id: String,

    #[command(flatten)]
    pub input: Input,

    /// Target algebra of the homomorphism (4.3)
    #[arg(long)]
    pub target: Option<String>,

    /// Homomorphism matrix, dim target × dim algebra, as JSON rows or projection:i with --parts (4.3)
    #[arg(long)]
    pub kappa: Option<String>,

    /// Off-diagonal bimodule of a triangular algebra: regular, zero, inline JSON or JSON file (1.10, 4.7)
    #[arg(long, default_value = "regular")]
    pub y: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the algebra laws and, with --module, the bimodule laws
    Validate(Input),
    /// Hochschild cohomology Hⁿ(A, X), relative to --subalgebra when given
    Hochschild(Input),
    /// Relative cohomology H_Sⁿ(A, X) and its comparison with Hⁿ(A, X)
    Relative(Input),
    /// Cyclic cohomology HCⁿ_S(A)
    Cyclic(Input),
    /// The Connes–Tsygan long exact sequence
    ConnesTsygan(Input),
    /// Exactness of the short exact sequences of cyclic, relative and bar cochains
    Sbi(Input),
    /// Check one theorem on the given instance
    Verify(VerifyArgs),
    /// Check every built-in case
    Suite,
}
