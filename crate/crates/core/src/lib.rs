//! Provenance graph kernels.
//!
//! The crate turns labelled, directed provenance multigraphs into explicit
//! feature vectors of *provenance types* and from there into exact integer
//! Gram matrices that a kernel classifier can consume.
//!
//! Module map:
//!
//! * [`model`]: the graph data model, PROV-JSON ingestion, the line-delimited
//!   dataset format, label validation and graph utilities.
//! * [`typeinf`]: label-walk enumeration and the dynamic program that infers
//!   the h-types of every node in `O(h²·M)`.
//! * [`kernel`]: type universes, feature matrices, Gram matrices, the
//!   normalised Hamming distance over types, feature naming and instance
//!   retrieval.
//! * [`baselines`]: vertex histogram, edge histogram and Weisfeiler-Lehman
//!   subtree kernels.
//! * [`pgsim`]: a seeded Pokémon Go simulator that emits one provenance graph
//!   per player.
//! * [`mlpipe`]: balancing, an SMO kernel SVM, repeated k-fold
//!   cross-validation and the Mann-Whitney rank-sum test.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default). Every parallel entry point also accepts an [`Exec`] so the
//! sequential path stays callable for benchmarks and for `--threads 1`.

pub mod baselines;
pub mod exec;
pub mod fixtures;
pub mod kernel;
pub mod mlpipe;
pub mod model;
pub mod pgsim;
pub(crate) mod sparse;
pub mod typeinf;

pub use exec::Exec;
pub use kernel::{build_universe, featurize, gram, FeatureMatrix, GramMatrix, TypeUniverse};
pub use model::{
    Dataset, EdgeLabel, GenericKind, GraphBuilder, GraphFamily, LabelMode, NodeLabel, ProvGraph,
};
pub use typeinf::{infer_types, PType, TypeAssignment};
