//! `twistknot`: batch computations and verification reports for colored Jones
//! polynomials of twist knots at `e^{2πi/(N+1/2)}`.

mod commands;
mod output;
mod range;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twist_core::numerics::PRECISION_ENV;

use crate::output::{emit, emit_error, CliError};
use crate::range::NRange;

#[derive(Debug, Parser)]
#[command(name = "twistknot", version, about = "Colored Jones polynomials of twist knots at e^{2πi/(N+1/2)}")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format; JSON is authoritative, CSV is a flat projection.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Arithmetic backend for the exact sums (machine-double or extended).
    #[arg(long, global = true, env = PRECISION_ENV, default_value = "machine-double")]
    precision: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact value of J_N(K_p; ξ_N) for one N or a range `a..b[:step]`.
    Jones {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long = "N")]
        n: NRange,
    },
    /// Critical point (t₀, s₀) of the potential function and ζ(p).
    Critical {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
    },
    /// Asymptotic constants 2πζ(p) and ω(p).
    Constants {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
    },
    /// vol + i·cs from the gluing equation, checked against 2πζ(p).
    Volume {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
    },
    /// Growth-rate table (2π/(N+½)) log|J_N| against the volume, with the ratio to the leading asymptotics.
    VerifyAsymptotics {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long = "N", default_value = "25..200:25")]
        n: NRange,
    },
    /// Fourier coefficient ĥ_N(m, n) of the cut-off lattice sum, or all of them in a window.
    Fourier {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        m: i64,
        #[arg(long = "n", allow_negative_numbers = true, default_value_t = 0)]
        index_n: i64,
        /// Emit every (m, n) with |m| ≤ 1 and −window−2 ≤ n ≤ window instead of a single index.
        #[arg(long)]
        window: Option<i64>,
        /// Width ε of the smooth cut-off collar.
        #[arg(long, default_value_t = twist_core::potential::DEFAULT_BUMP_EPS)]
        eps: f64,
    },
    /// Pass/fail report for a suite of numerical certificates.
    Lemmas {
        #[arg(long, value_enum)]
        suite: commands::Suite,
        /// Grid resolution of the region sweep (points per axis).
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        /// Exit with status 1 when any check fails.
        #[arg(long)]
        strict: bool,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let ctx = commands::Context::new(&cli.common.precision)?;
    let (report, all_pass, strict) = match cli.command {
        Command::Jones { p, n } => (commands::jones(&ctx, p, &n)?, true, false),
        Command::Critical { p } => (commands::critical(&ctx, p)?, true, false),
        Command::Constants { p } => (commands::constants(&ctx, p)?, true, false),
        Command::Volume { p } => (commands::volume(&ctx, p)?, true, false),
        Command::VerifyAsymptotics { p, n } => (commands::verify_asymptotics(&ctx, p, &n)?, true, false),
        Command::Fourier { p, n, m, index_n, window, eps } => {
            (commands::fourier(&ctx, p, n, m, index_n, window, eps)?, true, false)
        }
        Command::Lemmas { suite, grid, strict } => {
            let (report, pass) = commands::lemmas(&ctx, suite, grid)?;
            (report, pass, strict)
        }
    };
    emit(&report, cli.common.format, cli.common.output.as_deref())?;
    Ok(all_pass || !strict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            emit_error(&e);
            ExitCode::from(2)
        }
    }
}
