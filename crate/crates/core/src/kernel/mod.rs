//! Feature vectors over type universes, exact Gram matrices, the Hamming
//! distance between types and type-based explanation helpers.

mod explain;
mod features;
mod gram;
mod metric;
mod universe;

use thiserror::Error;

pub use explain::retrieve_instances;
pub use features::{featurize, featurize_with, sidecar as feature_sidecar, FeatureMatrix};
pub use gram::{gram, gram_with, kernel_value, write_float_gram_csv, GramMatrix};
pub use metric::{hamming_distance, TypeDistance};
pub use universe::{build_universe, feature_name, FeatureName, TypeUniverse};

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("type {ty} at depth {depth} is missing from the universe (stale universe?)")]
    StaleUniverse { depth: usize, ty: String },
    #[error("kernel value overflows u64 for graphs {p} and {q}")]
    Overflow { p: usize, q: usize },
    #[error("depth {requested} exceeds the featurized depth {available}")]
    DepthTooLarge { requested: usize, available: usize },
    #[error("cannot normalize: graph `{0}` has a zero self-kernel")]
    ZeroDiagonal(String),
    #[error("types have different depths ({0} and {1})")]
    DepthMismatch(usize, usize),
    #[error("unknown feature name `{0}`")]
    UnknownFeature(String),
    #[error("feature `{name}` was named in {found} mode but the universe is {expected}")]
    FeatureMode { name: String, found: &'static str, expected: &'static str },
    #[error("graph index {0} out of range")]
    GraphIndex(usize),
    #[error("size mismatch: {0}")]
    Shape(String),
}
