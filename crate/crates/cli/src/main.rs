//! `shapeforge`: abstract shapes, Motzkin-path bijections, exact counts and
//! asymptotics from the command line.
//!
//! Exit status is 0 on success, 1 on a domain error or a failed identity and
//! 2 on a usage error. Output is written only once the whole result is known.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use output::Format;

/// Guard override for enumerations; raising it can exhaust memory.
pub const MAX_N_ENV: &str = "SHAPEFORGE_MAX_N";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot read {path}: {message}")]
    Input { path: String, message: String },
    #[error("cannot format output: {0}")]
    Output(String),
    /// A verification ran to completion but an instance failed; the report is
    /// still printed.
    #[error("{message}")]
    Failed { output: String, message: String },
}

impl CliError {
    pub fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }

    pub fn missing(flag: &str, what: &str) -> Self {
        CliError::Usage(format!("{what} needs {flag}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "shapeforge", version, about = "Combinatorics of RNA abstract shapes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// Structures come from `--in` or, one per line, from `--file`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Input string.
    #[arg(long = "in", value_name = "TEXT", allow_hyphen_values = true)]
    pub text: Option<String>,
    /// File with one input per line; blank lines and lines starting with `#`
    /// or `>` are skipped.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Level {
    Island,
    PiPrime,
    Pi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BijectionOp {
    Encode2,
    Decode2,
    Encode1,
    Decode1,
    List,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Motzkin1,
    Motzkin2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CountFamily {
    Binomial,
    Catalan,
    Narayana,
    Motzkin,
    MotzkinPoly,
    Convolution,
    Fibonacci,
    Level0,
    Level0Weighted,
    Island,
    IslandDiagrams,
    G,
    Level0Gf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GFormArg {
    Narayana,
    Closed,
    Motzkin2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DistributionFamily {
    Level0,
    Pi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum AsymptoticsTarget {
    MotzkinNumber,
    Level0Total,
    Level0WeightedSum,
    PiTotal,
    PiR0,
    PiWeightedSum,
    Zeta,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a dot-bracket string is a secondary structure.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// List the structure elements of a secondary structure.
    Analyze {
        #[command(flatten)]
        input: Input,
    },
    /// Abstract a structure to an island diagram, pi'-shape or pi-shape.
    Abstract {
        #[arg(long, value_enum)]
        level: Level,
        #[command(flatten)]
        input: Input,
    },
    /// Run the path bijections, or list them for every path of one size.
    Bijection {
        #[arg(value_enum)]
        op: BijectionOp,
        /// Path over U, D and R, B (2-Motzkin) or H (1-Motzkin).
        #[arg(long)]
        path: Option<String>,
        /// Bracket string to decode.
        #[arg(long = "in", value_name = "TEXT")]
        text: Option<String>,
        #[arg(long, value_enum, default_value_t = Kind::Motzkin2)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Exact counts; leaving out the last parameter lists its whole range.
    Count {
        #[arg(value_enum)]
        family: CountFamily,
        #[command(flatten)]
        params: CountParams,
    },
    /// Check a named identity, or `all`, as exact equalities.
    Verify {
        identity: String,
        /// Lower end of the parameter range.
        #[arg(long)]
        lo: Option<u32>,
        /// Upper end of the parameter range.
        #[arg(long)]
        hi: Option<u32>,
    },
    /// Exact r0 distribution next to its limit law.
    Distribution {
        #[arg(value_enum)]
        family: DistributionFamily,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long)]
        nu: Option<usize>,
        #[arg(long = "r0-max", default_value_t = 8)]
        r0_max: usize,
    },
    /// Exact count against its leading-order asymptotic, or the dominant
    /// singularity for `zeta`.
    Asymptotics {
        #[arg(value_enum)]
        target: AsymptoticsTarget,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r0: Option<usize>,
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long)]
        nu: Option<usize>,
    },
    /// Compatible pi-shapes of length nu by number of components minus one.
    Compatible {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        nu: usize,
        #[arg(long = "r0-max")]
        r0_max: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct CountParams {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub u: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub r0: Option<u32>,
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long)]
    pub islands: Option<u32>,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value_t = GFormArg::Narayana)]
    pub form: GFormArg,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let report = match cli.command {
        Command::Validate { input } => commands::validate(&input)?,
        Command::Analyze { input } => commands::analyze(&input)?,
        Command::Abstract { level, input } => commands::abstract_shapes(level, &input)?,
        Command::Bijection {
            op,
            path,
            text,
            kind,
            n,
        } => commands::bijection(op, path, text, kind, n)?,
        Command::Count { family, params } => commands::count(family, &params)?,
        Command::Verify { identity, lo, hi } => {
            let (report, failure) = commands::verify(&identity, lo, hi)?;
            if let Some(message) = failure {
                return Err(CliError::Failed {
                    output: report.render(cli.format)?,
                    message,
                });
            }
            report
        }
        Command::Distribution {
            family,
            n,
            lambda,
            nu,
            r0_max,
        } => commands::distribution(family, n, lambda, nu, r0_max)?,
        Command::Asymptotics {
            target,
            n,
            r0,
            lambda,
            nu,
        } => commands::asymptotics(target, n, r0, lambda, nu)?,
        Command::Compatible { lambda, nu, r0_max } => commands::compatible(lambda, nu, r0_max)?,
    };
    report.render(cli.format)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(out) => {
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Failed { output, message }) => {
            let _ = stdout.write_all(output.as_bytes());
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
