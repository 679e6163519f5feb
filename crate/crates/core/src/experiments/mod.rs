//! Experiment configuration, the Monte Carlo runner, and the verification
//! suites.

mod config;
mod report;
mod runner;
mod suites;

pub use config::{
    AlphaSpec, DistributionSpec, ExperimentConfig, RenewalChecksSpec, SuiteKind,
};
pub use report::{CheckRecord, StatReport};
pub use runner::{run_monte_carlo, run_replications, MonteCarloSummary};
pub use suites::{run_suite, verify_fclt, verify_identities, verify_moments, verify_slln};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
    #[error(transparent)]
    Renewal(#[from] crate::renewal::RenewalError),
}
