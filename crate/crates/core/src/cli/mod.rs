//! The `schrodinger` command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (converged, a criterion holds, potentials agree) |
//! | 1 | input, parse or validation error |
//! | 2 | degenerate or divergent run; `compare`: a solver failed |
//! | 3 | iteration limit reached |
//! | 4 | `check`: every computed criterion fails |
//! | 5 | `compare`: potential gap above tolerance |

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{default_points, load_input, CeilingChoice, Input, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_MAX_ITER: i32 = 3;
pub const EXIT_CRITERIA_FAIL: i32 = 4;
pub const EXIT_GAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "schrodinger",
    version,
    about = "Fortet fixed-point solver for discrete Schrödinger systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Truncated,
    Untruncated,
    Sinkhorn,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Truncated => "truncated",
            Scheme::Untruncated => "untruncated",
            Scheme::Sinkhorn => "sinkhorn",
        }
    }
}

/// Options shared by every command that reads a problem.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Problem file (`.json`), CSV bundle directory, or Gaussian spec JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Relative-change stopping tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// Ceiling `U`: `ones`, `warm`, or a JSON/CSV file of values.
    #[arg(long = "U", default_value = "ones")]
    pub ceiling: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid points per dimension for Gaussian spec inputs.
    #[arg(long)]
    pub points: Option<usize>,
    /// Grid half width in standard deviations for Gaussian spec inputs.
    #[arg(long, default_value_t = 6.0)]
    pub half_width: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the Schrödinger system and write the solution report.
    Solve {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "truncated")]
        scheme: Scheme,
        /// Include the per-iteration trace (JSON, plus CSV beside `--output`).
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate the existence criteria.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluate the dominating-potential criterion with the `--U` ceiling.
        #[arg(long)]
        hyp03: bool,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 0)]
        x_o: usize,
        /// Compact set `K` (comma-separated source indices) for the
        /// domination criterion.
        #[arg(long, value_delimiter = ',')]
        hyp02_k: Vec<usize>,
        /// Anchor points; defaults to the coordinate extremes of `K`.
        #[arg(long, value_delimiter = ',')]
        hyp02_x: Vec<usize>,
        /// Coefficients for the anchors; searched for when omitted.
        #[arg(long, value_delimiter = ',')]
        hyp02_c: Vec<f64>,
        /// Check the monotone-tail condition of a radial kernel.
        #[arg(long)]
        radial: bool,
    },
    /// Compare Fortet and Sinkhorn potentials and couplings.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest accepted sup-norm gap between normalized potentials.
        #[arg(long, default_value_t = 1e-8)]
        gap_tol: f64,
    },
    /// Discretize a Gaussian problem.
    GaussianGen {
        /// Gaussian spec JSON `{"a": .., "b": .., "c": ..}`.
        #[arg(long, conflicts_with_all = ["a", "b", "c"])]
        spec: Option<PathBuf>,
        #[arg(long, requires_all = ["b", "c"])]
        a: Option<f64>,
        #[arg(long, requires_all = ["a", "c"])]
        b: Option<f64>,
        #[arg(long, requires_all = ["a", "b"])]
        c: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = 6.0)]
        half_width: f64,
        /// `.json` file or CSV bundle directory; stdout JSON when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve, check and write plot-ready CSV files into a directory.
    Report {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "truncated")]
        scheme: Scheme,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_ERROR;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
