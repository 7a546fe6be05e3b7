//! `momentlab`: JSON in, JSON out.
//!
//! Exit status 0 means the checked property holds, 1 means it was refuted
//! (a certificate is printed), 2 means the input could not be used.

mod commands;
mod io;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use momentlab_core::moments::SupportSet;
use momentlab_core::scalar::{Mode, DEFAULT_TOL};

use io::Input;

#[derive(Debug, Parser)]
#[command(name = "momentlab", version, about = "Moment sequences, positivity and entrywise transforms")]
struct Cli {
    /// Print numbers as decimals with 17 significant digits instead of exact rationals.
    #[arg(long, global = true)]
    float: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Grid {
    /// 10^-1 .. 10^-8.
    Decade,
    /// {1,2,5}·10^-k.
    Fine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Moments s_0..s_k of a measure and its Hankel matrix.
    Moments {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Hankel size; defaults to k/2 + 1.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Truncated support criteria for a moment sequence.
    CheckSupport {
        #[command(flatten)]
        input: Input,
        /// One of R, [0,inf), [-1,1], [0,1].
        #[arg(long)]
        support: SupportSet,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Positive semidefiniteness with a certificate on failure.
    CheckPsd {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Total non-negativity by minor enumeration (and the Hankel criterion when it applies).
    CheckTn {
        #[command(flatten)]
        input: Input,
    },
    /// Entrywise transform of a matrix or moment sequence.
    Apply {
        #[command(flatten)]
        input: Input,
        /// Transform JSON, inline or as a path.
        #[arg(long)]
        transform: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Critical value for the negative top coefficient of a polynomial preserver.
    CriticalValue {
        /// Coefficients c_0..c_{N-1}, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<String>,
        #[arg(long)]
        m: usize,
        /// Must equal the number of coefficients when given.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "1")]
        rho: String,
    },
    /// Hook Schur polynomial at the all-ones point.
    HookSchur {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
    },
    /// PSD test of ((1 + x_i x_j)^alpha) over given or seeded points.
    Jain {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// Explicit points; otherwise `draws` seeded samples.
        #[arg(long, value_delimiter = ',')]
        xs: Option<Vec<f64>>,
        #[arg(long, default_value_t = 50)]
        draws: usize,
        #[arg(long, env = "MOMENTLAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Runs a transform over a test family and reports failures.
    Preserve {
        #[arg(long)]
        transform: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Family parameters as JSON, e.g. {"u0":"1/3"}.
        #[arg(long)]
        params: Option<String>,
        /// Shrink the first failure using at most this many checks.
        #[arg(long)]
        minimize: Option<usize>,
        #[arg(long, env = "MOMENTLAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// The twelve determinants, adj(M) and the quartic coefficient check.
    AppendixA {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, env = "MOMENTLAB_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Scans x for a negative det A(x)^{∘alpha}.
    DeltaSearch {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "decade")]
        grid: Grid,
        /// Explicit grid points, overriding --grid.
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<f64>>,
    },
}

/// What a subcommand decided, with the text to print.
pub enum Outcome {
    Holds(String),
    Refuted(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, io::Render { float: cli.float }) {
        // A closed pipe downstream is not our failure.
        Ok(Outcome::Holds(out)) => {
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Refuted(out)) => {
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
