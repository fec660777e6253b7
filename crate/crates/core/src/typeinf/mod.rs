//! Provenance types: representation, walk enumeration and inference.

mod infer;
mod ptype;
mod walks;

use std::collections::HashMap;

use thiserror::Error;

use crate::model::{LabelMode, ModelError};

pub use infer::{infer_types, infer_types_with};
pub use ptype::{is_extension, Layer, NodeSet, PType};
pub use walks::{enumerate_label_walks, type_from_walks, LabelWalk};

#[derive(Debug, Error)]
pub enum TypeError {
    #[error("graph `{graph}`: node `{node}` does not exist")]
    UnknownNode { graph: String, node: String },
    #[error("a type layer is empty")]
    EmptyLayer,
    #[error("the empty type has no layers")]
    EmptyType,
    #[error("extension needs a strictly deeper type (got depths {deep} and {shallow})")]
    DepthOrder { deep: usize, shallow: usize },
    #[error("walk of length {found} in a set of length-{expected} walks")]
    MixedWalkLengths { expected: usize, found: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

static EMPTY: PType = PType::Empty;

/// φ⁰ … φʰ of every node in a family.
///
/// Distinct non-empty types of each depth are stored once in a family-wide
/// table, numbered in order of first occurrence (graph order, then node
/// order). Nodes hold a slot into that table or nothing for `Empty`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeAssignment {
    h_max: usize,
    mode: LabelMode,
    graph_ids: Vec<String>,
    graph_index: HashMap<String, usize>,
    node_ids: Vec<Vec<String>>,
    tables: Vec<Vec<PType>>,
    slots: Vec<Vec<Vec<u32>>>,
}

impl TypeAssignment {
    pub(crate) fn from_parts(
        h_max: usize,
        mode: LabelMode,
        graph_ids: Vec<String>,
        node_ids: Vec<Vec<String>>,
        tables: Vec<Vec<PType>>,
        slots: Vec<Vec<Vec<u32>>>,
    ) -> Self {
        let graph_index = graph_ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        TypeAssignment { h_max, mode, graph_ids, graph_index, node_ids, tables, slots }
    }

    pub fn h_max(&self) -> usize {
        self.h_max
    }

    pub fn mode(&self) -> LabelMode {
        self.mode
    }

    pub fn graph_count(&self) -> usize {
        self.graph_ids.len()
    }

    pub fn graph_ids(&self) -> &[String] {
        &self.graph_ids
    }

    pub fn graph_position(&self, graph_id: &str) -> Option<usize> {
        self.graph_index.get(graph_id).copied()
    }

    /// Node ids of graph `g`, sorted.
    pub fn node_ids(&self, g: usize) -> &[String] {
        &self.node_ids[g]
    }

    /// Distinct non-empty types seen at depth `d`, in first-occurrence order.
    pub fn table(&self, d: usize) -> &[PType] {
        &self.tables[d]
    }

    /// Table slot of node `n` of graph `g` at depth `d`.
    pub fn slot(&self, g: usize, n: usize, d: usize) -> Option<u32> {
        let s = self.slots[g][d][n];
        (s != infer::NONE).then_some(s)
    }

    /// Slots of every node of graph `g` at depth `d`.
    pub(crate) fn slots(&self, g: usize, d: usize) -> &[u32] {
        &self.slots[g][d]
    }

    pub fn get(&self, g: usize, n: usize, d: usize) -> &PType {
        match self.slot(g, n, d) {
            Some(s) => &self.tables[d][s as usize],
            None => &EMPTY,
        }
    }

    /// φᵈ of a node looked up by ids.
    pub fn type_of(&self, graph_id: &str, node_id: &str, d: usize) -> Option<&PType> {
        let g = self.graph_position(graph_id)?;
        let n = self.node_ids[g].binary_search_by(|id| id.as_str().cmp(node_id)).ok()?;
        (d <= self.h_max).then(|| self.get(g, n, d))
    }

    /// Every (graph, node, depth, type) in graph, node, depth order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, usize, &PType)> + '_ {
        self.graph_ids.iter().enumerate().flat_map(move |(g, gid)| {
            self.node_ids[g].iter().enumerate().flat_map(move |(n, nid)| {
                (0..=self.h_max).map(move |d| (gid.as_str(), nid.as_str(), d, self.get(g, n, d)))
            })
        })
    }
}

pub(crate) use infer::NONE;
