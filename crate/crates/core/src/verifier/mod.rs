//! Grid sweeps: build families, compute invariants, evaluate the bounds, report.

pub mod chains;
pub mod config;
pub mod record;
pub mod render;
pub mod selftest;
pub mod sweep;

use thiserror::Error;

pub use chains::{check_inequality_chains, ChainCheck, ChainReport};
pub use config::{Check, Format, GridPoint, SweepConfig};
pub use record::{Verdict, VerificationRecord};
pub use render::{chains_table, render, to_csv, to_json};
pub use selftest::{run_selftest, SelftestCase};
pub use sweep::{run_sweep, threads_from_env, Summary, SweepResult, THREADS_VAR};

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("config line {line}, `{field}`: {message}")]
    Config { line: usize, field: String, message: String },
    #[error("{THREADS_VAR} must be a positive integer, got `{0}`")]
    Threads(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error("rendering failed: {0}")]
    Render(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
