//! Seeded instance generators, the worked-example fixtures, fuzz campaigns
//! and the property suite.

pub mod fixtures;
mod fuzz;
mod generate;
mod properties;
mod repro;
mod rng;
mod suite;

pub use fuzz::{fuzz, run_trial, FuzzSummary};
pub use generate::{
    full_isometry, gaussian_matrix, generate, hermitian, partition_isometry, positive,
    positive_pair, projection, unitary, with_spectrum, GenKind, GenSpec, Generated, Partition,
};
pub use repro::{repro, ReproFlag, ReproReport, ReproRow, EXAMPLES};
pub use rng::{mix64, name_hash, trial_seed, SplitMix64, GOLDEN_GAMMA};
pub use suite::{property_suite, PropertyResult, SuiteConfig, SuiteReport};

use crate::ineq::IneqError;
use crate::linalg::LinalgError;
use crate::major::MajorError;
use crate::spectra::SpectraError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("unknown inequality {0:?}")]
    UnknownInequality(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Ineq(#[from] IneqError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Major(#[from] MajorError),
}
