//! Command-line front end for `torsionlab`.

pub mod commands;
pub mod document;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use document::{ComplexDocument, FORMAT_VERSION};

/// A failed command: process exit code plus message.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_MALFORMED, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVARIANT, message: format!("invariant violated: {}", message.into()) }
    }
}

impl From<torsionlab::Error> for Failure {
    fn from(e: torsionlab::Error) -> Self {
        use torsionlab::Error::*;
        let code = match &e {
            Parse(_) | InvalidArgument(_) => EXIT_MALFORMED,
            Unsupported(_) => EXIT_UNSUPPORTED,
            Dimension(_) | Singular(_) | NonIntegral(_) | Invariant(_) | NotExact(_) | Numerical(_) => EXIT_INVARIANT,
        };
        Self { code, message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

pub type Outcome = std::result::Result<String, Failure>;

#[derive(Parser, Debug)]
#[command(name = "torsionlab", version, about = "Intersection homology, torsion and Bessel spectra of cones")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded (intersection) homology ranks of a complex document.
    Homology(HomologyArgs),
    /// Cone torsions from the closed form and/or from chains.
    Torsion(TorsionArgs),
    /// Bessel zeros, zeta values at zero and product-formula checks.
    Zeta(ZetaArgs),
    /// Eigenvalues of the Laplacian on a cone over a section.
    Spectrum(SpectrumArgs),
    /// Validate a document, or run the built-in checks.
    Verify(VerifyArgs),
    /// Print a canonical example document.
    Example(ExampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Abs,
    Rel,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    pub file: PathBuf,
    /// Use the stratification; without it the ordinary homology is reported.
    #[arg(long)]
    pub intersection: bool,
    /// m, mc, zero, top, or a comma-separated list p_2,…,p_n
    #[arg(long, default_value = "m")]
    pub perversity: String,
    /// Relative to the boundary.
    #[arg(long)]
    pub relative: bool,
}

#[derive(Args, Debug)]
pub struct TorsionArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub flavor: Option<FlavorArg>,
    /// Cone scale l as a rational; overrides the document.
    #[arg(long)]
    pub scale: Option<String>,
    /// m or mc; selects the chain-level perversity.
    #[arg(long, default_value = "m")]
    pub perversity: String,
    #[arg(long)]
    pub closed_form: bool,
    #[arg(long)]
    pub chain_level: bool,
    /// Rational value of log τ(W, l²g) for the closed form.
    #[arg(long, allow_hyphen_values = true)]
    pub section_log_torsion: Option<String>,
    /// Also report the duality residuals.
    #[arg(long)]
    pub duality: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Plain,
    Derivative,
    Hatted,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, value_enum, default_value = "plain")]
    pub mode: ModeArg,
    /// Parameter of the hatted sequence `cJ_ν + xJ′_ν`.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Print the first zeros as CSV.
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Print ζ(0) and ζ′(0).
    #[arg(long)]
    pub values: bool,
    /// Print z_q(0), z_q′(0); all q < p without --q.
    #[arg(long)]
    pub zq: bool,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub product_check: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// Zeros used by the product check.
    #[arg(long, default_value_t = 10_000)]
    pub zeros: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BcArg {
    Abs,
    Rel,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Section spectrum as JSON; omit with --circle.
    pub file: Option<PathBuf>,
    /// Use the unit circle with its exact spectrum.
    #[arg(long)]
    pub circle: bool,
    #[arg(long, value_enum, default_value = "abs")]
    pub bc: BcArg,
    #[arg(long, default_value_t = 0)]
    pub degree: usize,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = 4)]
    pub k_max: usize,
    #[arg(long)]
    pub scale: Option<f64>,
    /// Evaluate the partial torsion zeta at this real s instead.
    #[arg(long)]
    pub torsion_zeta: Option<f64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    pub name: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            Failure { code: 0, message: e.to_string() }
        }
        _ => Failure::usage(e.to_string()),
    })?;
    dispatch(&cli.command)
}

pub fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Homology(a) => commands::homology(a),
        Command::Torsion(a) => commands::torsion(a),
        Command::Zeta(a) => commands::zeta(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Verify(a) => commands::verify(a),
        Command::Example(a) => commands::example(&a.name),
    }
}
