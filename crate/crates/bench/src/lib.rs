//! Experiment harness for the `kregret` selectors: configuration parsing,
//! the (algorithm, k) experiment loop, and the result CSV format.

pub mod config;
mod error;
pub mod experiment;

pub use config::{Algorithm, DatasetSpec, ExperimentConfig, RawConfig};
pub use error::{BenchError, BenchResult};
pub use experiment::{
    run_experiment, select, strip_timing, write_csv, ResultRow, SelectOptions, CSV_HEADER,
};

/// Environment variable overriding the worker-thread count.
pub const THREADS_ENV: &str = "KREGRET_THREADS";
