//! The `gplus` command-line tool.
//!
//! Exit codes: 0 on success, 1 when data or configuration fails
//! validation, 2 on usage errors.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gplus_core::ingest::ControlMode;

pub use config::{parse_config_file, NormArg};

#[derive(Debug, Parser)]
#[command(
    name = "gplus",
    version,
    about = "Work fingerprints and g+ scores from O*NET-style data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Directory holding primitives.tsv, occupations.tsv, ratings.tsv,
    /// tasks.tsv, task_dwa.tsv and activities.tsv.
    #[arg(long, global = true, env = "GPLUS_DATA_DIR", value_name = "DIR")]
    pub data: Option<PathBuf>,
    /// Subtask portfolio ledger.
    #[arg(long, global = true, value_name = "FILE")]
    pub ledger: Option<PathBuf>,
    /// key=value file with norm_constant, norm_mode, comparison, epsilon.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<ControlMode>,
    #[arg(long = "as-of", global = true, value_parser = parse_date, value_name = "DATE")]
    pub as_of: Option<NaiveDate>,
    /// `pinned:<value>` or `derived`.
    #[arg(long, global = true, value_parser = config::parse_norm)]
    pub norm: Option<NormArg>,
    #[arg(long, global = true)]
    pub comparison: Option<ComparisonArg>,
    #[arg(long, global = true, default_value = "json")]
    pub format: FormatArg,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Leave generated_at empty so identical inputs give identical bytes.
    #[arg(long = "no-timestamp", global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComparisonArg {
    Meets,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKindArg {
    Dwa,
    Task,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Population {
    Occupations,
    Dwa,
    Tasks,
    Subtasks,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and cross-check the dataset (and ledger, if given); print counts.
    Validate,
    /// Merged fingerprint of the given occupations, or the ledger's work
    /// fingerprint per control mode.
    Fingerprint {
        #[arg(long = "occupation", value_name = "SOC")]
        occupations: Vec<String>,
    },
    /// g+ of one or more occupations.
    Gplus {
        #[arg(long = "occupation", value_name = "SOC", required = true)]
        occupations: Vec<String>,
    },
    /// Work fingerprint and g+ inferred from the ledger.
    Evaluate,
    /// Tasks performable with a work fingerprint, or the shortfall against
    /// one occupation.
    Performable {
        /// Use the merged fingerprint of these occupations as the worker.
        #[arg(long = "occupation", value_name = "SOC")]
        occupations: Vec<String>,
        /// Compare against this occupation instead of counting tasks.
        #[arg(long, value_name = "SOC")]
        against: Option<String>,
    },
    /// Upper-bound fingerprints for detailed work activities or tasks.
    Bounds {
        #[arg(long, default_value = "task")]
        kind: BoundKindArg,
    },
    /// g+ distribution over a population.
    Stats {
        #[arg(long, default_value = "occupations")]
        of: Population,
    },
    /// Cumulative g+ and performable-task count per first-success date.
    Timeline,
    /// Least-squares trend of the timeline and months to saturation.
    Forecast {
        /// Defaults to the g+ of the all-sevens fingerprint.
        #[arg(long)]
        target: Option<f64>,
    },
    /// Write the timeline as an SVG file (requires --out).
    Plot,
}

fn parse_mode(s: &str) -> Result<ControlMode, String> {
    s.parse()
}

fn parse_date(s: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|_| format!("{s:?} is not YYYY-MM-DD"))
}

#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Data(String),
}

impl From<gplus_core::Error> for Failure {
    fn from(e: gplus_core::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

/// Run the tool on `argv` (including the program name), writing the report
/// to `out` unless `--out` redirects it. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match commands::execute(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Data(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}
