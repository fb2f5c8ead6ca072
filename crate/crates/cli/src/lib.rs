//! Command-line front end for the `poolfaces` library.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit code with the rendered payload, so the binary and the tests share a
//! single code path.

mod commands;
mod render;

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use poolfaces::Error;

pub use render::Format;

/// Exit status of a successful run.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Inclusive integer range written `a` or `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn single(v: usize) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("`{t}` is not a nonnegative integer: {e}"))
        };
        let span = match s.split_once("..") {
            Some((a, b)) => Span {
                lo: num(a)?,
                hi: num(b.strip_prefix('=').unwrap_or(b))?,
            },
            None => Span::single(num(s)?),
        };
        if span.lo > span.hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "poolfaces",
    version,
    about = "Vertex, face and facet counts of max-pooling polytopes"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Method1d {
    Oracle,
    Matrix,
    Gf,
    Closed,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Method3xn {
    Oracle,
    A14,
    B6,
    Gf,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, Args)]
pub(crate) struct Budget {
    /// Largest number of candidate selections the oracle may examine.
    #[arg(long, default_value_t = poolfaces::oracle::DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertex counts b_n of the one-dimensional polytope P_{n,k,s}.
    Vertices {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Number of windows, or a range such as `1..6`.
        #[arg(long)]
        n: Span,
        #[arg(long, value_enum, default_value_t = Method1d::All)]
        method: Method1d,
        #[command(flatten)]
        budget: Budget,
    },
    /// Generating function sum b_{n+1} x^n.
    Gf {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Use the closed form of the covering regime.
        #[arg(long, conflicts_with = "matrix")]
        closed: bool,
        /// Use the transfer matrix only.
        #[arg(long)]
        matrix: bool,
        /// Series coefficients to print.
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Faces of P_{n,k,s} by dimension.
    Fvector {
        /// Window size, or a range such as `3..6`.
        #[arg(long)]
        k: Span,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: Span,
        /// Dimension tabulated by `--format csv` over ranges.
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Total number of faces, the empty face included.
    TotalFaces {
        #[arg(long)]
        k: Span,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: Span,
        #[command(flatten)]
        budget: Budget,
    },
    /// Facet count or facet description of P_{n,k,s}.
    Facets {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        /// Print the inequality description.
        #[arg(long, conflicts_with = "paper_literal")]
        hrep: bool,
        /// Compare the printed corollary rows with the derived ones.
        #[arg(long)]
        paper_literal: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Exponential growth rate lim ln(count_n)/n.
    Growth {
        #[arg(long, required_unless_present = "grid3xn")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "grid3xn")]
        s: Option<usize>,
        /// Use the 3 x n grid instead of a one-dimensional layer.
        #[arg(long, conflicts_with_all = ["k", "s"])]
        grid3xn: bool,
        /// Width of the root bracket.
        #[arg(long, default_value_t = poolfaces::polyalg::DEFAULT_TOL)]
        tol: f64,
    },
    /// Vertex counts V_n for 2x2 pooling on a 3 x n grid.
    Grid3xn {
        #[arg(long)]
        n: Span,
        #[arg(long, value_enum, default_value_t = Method3xn::All)]
        method: Method3xn,
        /// Split the vertices by their last two columns.
        #[arg(long, conflicts_with = "method")]
        class_counts: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Vertex counts for 2x2 pooling on a 2 x n grid.
    Grid2xn {
        #[arg(long)]
        n: Span,
        #[command(flatten)]
        budget: Budget,
    },
    /// Distinct max-pooling patterns hit by random inputs.
    Regions {
        #[arg(long, required_unless_present = "grid3xn")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "grid3xn")]
        s: Option<usize>,
        #[arg(long, required_unless_present = "grid3xn")]
        n: Option<usize>,
        /// Sample the 3 x n grid with this many columns.
        #[arg(long, conflicts_with_all = ["k", "s", "n"])]
        grid3xn: Option<usize>,
        /// Number of random inputs.
        #[arg(long, default_value_t = 20_000)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run the self-check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Vertices { .. } => "vertices",
            Command::Gf { .. } => "gf",
            Command::Fvector { .. } => "fvector",
            Command::TotalFaces { .. } => "total-faces",
            Command::Facets { .. } => "facets",
            Command::Growth { .. } => "growth",
            Command::Grid3xn { .. } => "grid3xn",
            Command::Grid2xn { .. } => "grid2xn",
            Command::Regions { .. } => "regions",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::VerificationFailure(_) => EXIT_VERIFICATION,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first) and executes the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let name = cli.command.name();
    match commands::execute(cli.command) {
        Ok(payload) => {
            let code = if payload.failed {
                EXIT_VERIFICATION
            } else {
                EXIT_OK
            };
            Outcome {
                code,
                stdout: render::payload(name, &payload, cli.format),
                stderr: String::new(),
            }
        }
        Err((params, err)) => Outcome {
            code: exit_code(&err),
            stdout: render::error(name, &params, &err, cli.format),
            stderr: format!("poolfaces {name}: {err}\n"),
        },
    }
}
