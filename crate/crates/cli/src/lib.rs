//! The `nva` command line: file-based runs of the nvalg workbench with
//! reproducible reports.

pub mod commands;
pub mod replay;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nvalg::FieldSpec;

pub use commands::{construct, execute};
pub use report::{Envelope, Outcome, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: nvalg::Error,
    },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn core(context: impl Into<String>) -> impl FnOnce(nvalg::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Core { context, source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Exit status for a finished run whose replay found a mismatch.
pub const EXIT_REPLAY_MISMATCH: i32 = 3;
pub const EXIT_FAILURE: i32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "nva",
    version,
    about = "Identities, varieties and finite checks for nonassociative algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalOpts {
    /// q, gf:<p> or q-sqrt:<d>.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree: u64,
    /// Cap on basis-tuple evaluations per identity.
    #[arg(long, global = true, default_value_t = 1 << 22, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_tuples: u64,
    /// Cap on enumerated elements.
    #[arg(long, global = true, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_enum: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Re-evaluate every witness of the report before writing it.
    #[arg(long, global = true)]
    pub replay: bool,
}

impl Default for GlobalOpts {
    fn default() -> Self {
        GlobalOpts {
            field: None,
            max_degree: 4,
            budget_tuples: 1 << 22,
            budget_enum: 1 << 20,
            seed: 0,
            format: Format::Text,
            out: None,
            replay: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    NilpotentSet,
    OperatorChain,
    PowerInclusion,
    NilNilpotent,
    NilRadical,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Build an algebra from a recipe and write the algebra file.
    Construct { recipe: PathBuf },
    /// Check every identity of a file in an algebra.
    Check {
        algebra: PathBuf,
        identities: PathBuf,
    },
    /// Least degree in which Lie products reduce to circle products.
    ProbeAdmissibility { presentation: PathBuf },
    /// Evaluate a variety on the test bank of its class.
    Gate { presentation: PathBuf },
    /// Finite-dimensional checks on one algebra.
    Analyze {
        algebra: PathBuf,
        #[arg(value_enum)]
        analysis: Analysis,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Largest power examined when searching for the minimal k.
        #[arg(long, default_value_t = 16)]
        cutoff: usize,
        /// Draw this many random elements instead of enumerating.
        #[arg(long)]
        samples: Option<u64>,
        /// Nil check by nilpotency certificate only.
        #[arg(long)]
        certificate: bool,
    },
    /// Re-evaluate the witnesses of a structured report.
    Replay {
        report: PathBuf,
        /// Algebra file to use instead of the one named in the report.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}
