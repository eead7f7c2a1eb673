//! Experiment harness behind the `matstat` binary: grid runs, exponent fits,
//! JSON input parsing and CSV/JSON output.

pub mod commands;
pub mod experiment;
pub mod io;

use thiserror::Error;

pub use experiment::{
    compare_to_bound, fit_exponent, fit_records, judge, run_grid, BoundMode, ExperimentKind, ExperimentSpec,
    FitResult, GridRecord, Verdict,
};
pub use io::{parse_matrix, parse_tuple, Format, Manifest, Report, Table, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] matstat_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}
