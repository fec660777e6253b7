//! Labelled directed multigraphs, their on-disk formats and graph utilities.

mod graph;
mod labels;
pub mod internal;
pub mod provjson;
mod utils;
mod validate;

use thiserror::Error;

pub use graph::{Dataset, Edge, GraphBuilder, GraphFamily, Node, ProvGraph};
pub use internal::{load_dataset, load_internal, load_manifest_dir, save_dataset_dir, save_internal};
pub use labels::{EdgeLabel, EdgeSet, GenericKind, LabelMode, NodeLabel};
pub use provjson::{load_provjson, parse_provjson, ProvJsonImport};
pub use utils::{dependency_subgraph, graph_summary, GraphSummary};
pub use validate::{validate_labels, Advisory};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unknown edge label `{0}`")]
    UnknownEdgeLabel(String),
    #[error("unknown label mode `{0}` (expected generic or application)")]
    UnknownLabelMode(String),
    #[error("invalid application label `{0}`")]
    InvalidAppLabel(String),
    #[error("graph `{graph}`: node `{node}` does not exist")]
    UnknownNode { graph: String, node: String },
    #[error("graph `{graph}`: node `{node}` has no generic label (ent, act or ag)")]
    MissingGenericLabel { graph: String, node: String },
    #[error("duplicate graph id `{0}`")]
    DuplicateGraph(String),
    #[error("{graphs} graphs but {labels} class labels")]
    LabelCount { graphs: usize, labels: usize },
    #[error("{path}:{line}: {message}")]
    Malformed { path: String, line: usize, message: String },
    #[error("PROV-JSON parse error in {path}: {message}")]
    ProvJson { path: String, message: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ModelError {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        ModelError::Io { path: path.display().to_string(), source }
    }
}
