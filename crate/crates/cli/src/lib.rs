//! The `zg` command line: JSON, DOT and CSV reports on Ziegler spectra.
//!
//! [`run`] returns the process exit code: 0 on success, 2 for invalid
//! input, 3 when a computation bound is exceeded.

mod commands;
mod error;
mod model;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub use error::CliError;

/// Truncation used when `--truncate` is absent.
pub const DEFAULT_TRUNCATION: u64 = 4;

/// Coefficient box for witness searches when `--max-box` is absent.
pub const DEFAULT_MAX_BOX: u64 = 1 << 12;

#[derive(Parser, Debug)]
#[command(name = "zg", version, about = "Reports on Ziegler spectra of uniserial rings")]
struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Args, Debug)]
struct RingArg {
    /// Ring descriptor (JSON).
    #[arg(long, value_name = "FILE")]
    ring: PathBuf,
}

#[derive(Args, Debug)]
struct ChainArgs {
    /// The prime p of ℤ/pⁿ.
    #[arg(long)]
    p: u64,
    /// The exponent n of ℤ/pⁿ.
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the points of the spectrum, truncated at N for infinite families.
    Points {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "N")]
        truncate: Option<u64>,
    },
    /// The closure of a set of points.
    Closure {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "JSON")]
        set: String,
    },
    /// Whether a set of points is closed.
    IsClosed {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "JSON")]
        set: String,
    },
    /// Whether y lies in the closure of x.
    Specializes {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "JSON")]
        x: String,
        #[arg(long, value_name = "JSON")]
        y: String,
    },
    /// The point represented by a pair of cuts (invariant rings only).
    PairToPoint {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "JSON")]
        pair: String,
    },
    /// Membership of a point, or of the class of a pair, in a basic open W-set.
    #[command(group(ArgGroup::new("subject").required(true).args(["point", "pair"])))]
    InWset {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "JSON")]
        wset: String,
        #[arg(long, value_name = "JSON")]
        point: Option<String>,
        #[arg(long, value_name = "JSON")]
        pair: Option<String>,
        /// Coefficient bound for the witness search.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_BOX)]
        max_box: u64,
    },
    /// Soberness of a finite truncation, with a trichotomy witness per irreducible closed set.
    CheckSober {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_TRUNCATION)]
        truncate: u64,
    },
    /// Topological indistinguishability classes of a finite truncation.
    T0Quotient {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_TRUNCATION)]
        truncate: u64,
    },
    /// Tables over the finite chain ring ℤ/pⁿ.
    Chain {
        #[command(subcommand)]
        op: ChainOp,
    },
    /// Check a ring descriptor or a JSON report produced by this tool.
    #[command(group(ArgGroup::new("input").required(true).multiple(true).args(["ring", "report"])))]
    Validate {
        #[arg(long, value_name = "FILE")]
        ring: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ChainOp {
    /// Consistency of every e-pair: quantifier criterion against brute force.
    Consistency(ChainArgs),
    /// Baur–Monk invariants of the indecomposables over the pp-pairs.
    Invariants(ChainArgs),
    /// The Ziegler spectrum.
    Zg(ChainArgs),
    /// The Goursat correspondence for every scalar and cyclic module.
    Goursat(ChainArgs),
}

/// Parses `args` (including the program name), writes the report to `out`
/// and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match commands::dispatch(cli) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "zg: cannot write output: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "zg: {e}");
            e.code()
        }
    }
}
