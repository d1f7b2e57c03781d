//! The `twistalex` command line: argument parsing, input loading and report
//! rendering. [`run`] is pure apart from reading input files, so tests can
//! drive it directly.

mod commands;

use std::fmt;

use clap::{Args, Parser, Subcommand};

pub use commands::{load_alpha, load_knot, load_representation};

/// Stable process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const ORACLE: i32 = 3;
    pub const REPRESENTATION: i32 = 4;
    pub const THEOREM: i32 = 5;
    pub const INFINITE_IMAGE: i32 = 6;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failure carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl fmt::Display) -> Failure {
        Failure {
            code,
            message: message.to_string(),
        }
    }

    pub fn input(message: impl fmt::Display) -> Failure {
        Failure::new(exit::INPUT, message)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twistalex",
    version,
    about = "Exact Alexander, twisted Alexander and dilation-representation computations for knots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elementary Alexander polynomials Δ_1 … Δ_rmax.
    Alex(AlexArgs),
    /// Twisted polynomials D_1 … D_rmax, the Wada quotient and reciprocity.
    Twisted(TwistedArgs),
    /// Dimension of the based dilation representations with a given ratio.
    Verify(VerifyArgs),
    /// Derived presentations, or normal forms of derived words.
    Crowell(CrowellArgs),
    /// Whether the zeros of D_1 are closed under inversion.
    Reciprocal(ReciprocalArgs),
}

#[derive(Debug, Args, Clone, Default)]
#[group(id = "knot_source", multiple = false)]
pub struct KnotSource {
    /// Built-in knot: unknot, trefoil or figure8.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Presentation file (`generators`/`rel` or `braid` lines).
    #[arg(long, value_name = "FILE")]
    pub knot: Option<String>,
    /// Braid literal such as "2: 1 1 1"; the knot is its closure.
    #[arg(long, value_name = "S: LETTERS", allow_hyphen_values = true)]
    pub braid: Option<String>,
}

#[derive(Debug, Args, Clone, Default)]
#[group(id = "rep_source", multiple = false)]
pub struct RepSource {
    /// Representation file (`field`, `dim`, `matrix` blocks).
    #[arg(long, value_name = "FILE")]
    pub rep: Option<String>,
    /// One-dimensional representation sending every meridian to C.
    #[arg(long, value_name = "C", allow_hyphen_values = true)]
    pub scalar: Option<String>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Output {
    /// Emit one JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Include the based matrix and other detail.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct AlexArgs {
    #[command(flatten)]
    pub source: KnotSource,
    /// Number of elementary polynomials (default: the matrix size, at least 1).
    #[arg(long, value_name = "K")]
    pub rmax: Option<usize>,
    /// Recompute every polynomial as a gcd of minors and compare.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TwistedArgs {
    #[command(flatten)]
    pub source: KnotSource,
    #[command(flatten)]
    pub rep: RepSource,
    #[arg(long, value_name = "K")]
    pub rmax: Option<usize>,
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: KnotSource,
    #[command(flatten)]
    pub rep: RepSource,
    /// Dilation ratio: a literal such as 2, 1+i, or `root-of <minpoly>`.
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub alpha: String,
    /// Minimal polynomial following `--alpha root-of`.
    #[arg(value_name = "MINPOLY")]
    pub minpoly: Option<String>,
    /// Use the inverse of the given value as the ratio.
    #[arg(long)]
    pub inverse: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CrowellArgs {
    #[command(flatten)]
    pub source: KnotSource,
    #[command(flatten)]
    pub rep: RepSource,
    /// Action file for normal-form mode.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["builtin", "knot", "braid", "rep", "scalar"])]
    pub action: Option<String>,
    /// Derived word such as "^0(a) ^1(b)" (normal-form mode).
    #[arg(long, value_name = "WORD", requires = "action")]
    pub word: Option<String>,
    /// Output the inverse of the word.
    #[arg(long, requires = "word")]
    pub invert: bool,
    /// Apply the operator s to the word.
    #[arg(long = "act", value_name = "S", requires = "word")]
    pub act: Option<String>,
    /// Largest image enumerated before giving up.
    #[arg(long, value_name = "N", default_value_t = twistalex::derived::DEFAULT_IMAGE_CAP)]
    pub cap: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ReciprocalArgs {
    #[command(flatten)]
    pub source: KnotSource,
    #[command(flatten)]
    pub rep: RepSource,
    #[command(flatten)]
    pub output: Output,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: exit::OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: exit::INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(stdout) => Outcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        },
        Err((stdout, f)) => Outcome {
            code: f.code,
            stdout,
            stderr: format!("error: {}\n", f.message),
        },
    }
}
