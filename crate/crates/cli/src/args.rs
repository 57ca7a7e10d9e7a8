use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhgp_core::css::SearchBudget;

use crate::codespec::CodeSpec;

#[derive(Debug, Parser)]
#[command(
    name = "qhgp",
    version,
    about = "Build, inspect and verify hypergraph-product CSS codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write its matrices and report to a directory.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Compute [[N, K, D]] for a code directory.
    Params(ParamsArgs),
    /// Check every applicable structural identity and distance bound.
    Verify(VerifyArgs),
    /// Re-emit a code directory as alist files or a single JSON document.
    Export(ExportArgs),
}

#[derive(Debug, Subcommand)]
pub enum BuildTarget {
    /// Toric code: the product of two m-cycles.
    Toric {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: BuildCommon,
    },
    /// Product of a full-rank check matrix H with its transpose.
    HgpSingle {
        #[command(flatten)]
        source: SingleSource,
        #[command(flatten)]
        common: BuildCommon,
    },
    /// Product of two arbitrary incidence matrices.
    Hgp {
        #[command(flatten)]
        left: LeftSource,
        #[command(flatten)]
        right: RightSource,
        #[command(flatten)]
        common: BuildCommon,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SingleSource {
    /// Check matrix in alist format.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Named classical code, e.g. repetition:3, hamming:3, cycle:5, regular:12,3,4[,SEED].
    #[arg(long, value_name = "SPEC")]
    pub code: Option<CodeSpec>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LeftSource {
    #[arg(long, value_name = "FILE")]
    pub left: Option<PathBuf>,
    #[arg(long, value_name = "SPEC")]
    pub left_code: Option<CodeSpec>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RightSource {
    #[arg(long, value_name = "FILE")]
    pub right: Option<PathBuf>,
    #[arg(long, value_name = "SPEC")]
    pub right_code: Option<CodeSpec>,
}

#[derive(Debug, Args)]
pub struct BuildCommon {
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Seed for random code specs that do not carry their own.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Clone, Debug, Args)]
pub struct SearchArgs {
    /// Largest kernel dimension searched by full enumeration.
    #[arg(long, default_value_t = SearchBudget::default().full_enum_dim)]
    pub full_enum_dim: usize,
    /// Largest weight tried by the weight-ordered search.
    #[arg(long, default_value_t = SearchBudget::default().max_weight)]
    pub max_weight: usize,
    /// Candidate-vector budget per search.
    #[arg(long, default_value_t = SearchBudget::default().max_candidates)]
    pub max_candidates: u64,
    /// Worker threads for the distance search.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Zero all timing fields so reports are byte-for-byte reproducible.
    #[arg(long)]
    pub deterministic: bool,
    /// Exit with status 4 when a distance is only bounded.
    #[arg(long)]
    pub require_exact: bool,
}

impl SearchArgs {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            full_enum_dim: self.full_enum_dim,
            max_weight: self.max_weight,
            max_candidates: self.max_candidates,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParamsFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    pub dir: PathBuf,
    #[arg(long, value_enum, default_value_t = ParamsFormat::Text)]
    pub format: ParamsFormat,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub dir: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Alist,
    Json,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub dir: PathBuf,
    #[arg(long, value_enum)]
    pub format: ExportFormat,
    /// Target directory for alist, target file for JSON (stdout if absent).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl Command {
    pub fn search(&self) -> Option<&SearchArgs> {
        match self {
            Command::Build { target } => Some(match target {
                BuildTarget::Toric { common, .. }
                | BuildTarget::HgpSingle { common, .. }
                | BuildTarget::Hgp { common, .. } => &common.search,
            }),
            Command::Params(a) => Some(&a.search),
            Command::Verify(a) => Some(&a.search),
            Command::Export(_) => None,
        }
    }
}
