//! Classification and statistics harness: class balancing, a kernel SVM on
//! precomputed Gram matrices, repeated k-fold cross-validation and the
//! Mann-Whitney rank-sum test used to compare methods.

mod balance;
mod cv;
mod stats;
mod svm;

use thiserror::Error;

use crate::model::ModelError;

pub use balance::{balance_indices, balance_undersample};
pub use cv::{compare_reports, fold_assignment, repeated_kfold, Comparison, CvConfig, CvReport, Verdict};
pub use stats::{mannwhitney_u, MannWhitney};
pub use svm::{svm_train, BinaryMachine, SvmModel, SvmParams};

#[derive(Debug, Error)]
pub enum MlError {
    #[error("need at least two classes, found {0}")]
    TooFewClasses(usize),
    #[error("class index {0} has no members")]
    EmptyClass(usize),
    #[error("kernel matrix contains a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("expected a row of length {expected}, got {found}")]
    RowLength { expected: usize, found: usize },
    #[error("{n} samples cannot be split into {k} folds")]
    TooFewSamples { n: usize, k: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("a sample is empty")]
    EmptySample,
    #[error(transparent)]
    Model(#[from] ModelError),
}
