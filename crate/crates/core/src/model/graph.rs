use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::labels::{EdgeLabel, LabelMode, NodeLabel};
use super::ModelError;

/// A node and its label set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub labels: BTreeSet<NodeLabel>,
}

impl Node {
    /// Labels retained under `mode`, in sorted order.
    pub fn labels_in(&self, mode: LabelMode) -> impl Iterator<Item = &NodeLabel> {
        self.labels.iter().filter(move |l| mode.keeps(l))
    }
}

/// A labelled edge between two node indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: EdgeLabel,
}

/// A finite, directed, labelled multigraph.
///
/// Nodes are kept sorted by id; edges keep insertion order and may repeat.
/// Graphs are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvGraph {
    id: String,
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
}

impl ProvGraph {
    pub fn builder(id: impl Into<String>) -> GraphBuilder {
        GraphBuilder::new(id)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.node_index(id).map(|i| &self.nodes[i])
    }

    /// Out-adjacency in CSR form: `(offsets, edge indices)`.
    pub fn out_adjacency(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.nodes.len();
        let mut offsets = vec![0usize; n + 1];
        for e in &self.edges {
            offsets[e.src + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut order = vec![0usize; self.edges.len()];
        for (k, e) in self.edges.iter().enumerate() {
            order[fill[e.src]] = k;
            fill[e.src] += 1;
        }
        (offsets, order)
    }

    /// Returns a copy with every node label renamed through `f`.
    /// Used to check relabelling invariance.
    pub fn map_labels(&self, f: impl Fn(&NodeLabel) -> NodeLabel) -> ProvGraph {
        let mut g = self.clone();
        for node in &mut g.nodes {
            node.labels = node.labels.iter().map(&f).collect();
        }
        g
    }

    /// Returns a copy under a different id.
    pub fn with_id(&self, id: impl Into<String>) -> ProvGraph {
        let mut g = self.clone();
        g.id = id.into();
        g
    }
}

/// Incremental construction of a [`ProvGraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    id: String,
    nodes: BTreeMap<String, BTreeSet<NodeLabel>>,
    edges: Vec<(String, String, EdgeLabel)>,
}

impl GraphBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        GraphBuilder { id: id.into(), nodes: BTreeMap::new(), edges: Vec::new() }
    }

    /// Declares a node, merging labels if it already exists.
    pub fn node<I>(&mut self, id: impl Into<String>, labels: I) -> &mut Self
    where
        I: IntoIterator<Item = NodeLabel>,
    {
        self.nodes.entry(id.into()).or_default().extend(labels);
        self
    }

    pub fn has_node(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn edge(&mut self, src: impl Into<String>, dst: impl Into<String>, label: EdgeLabel) -> &mut Self {
        self.edges.push((src.into(), dst.into(), label));
        self
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn build(&self) -> Result<ProvGraph, ModelError> {
        let mut nodes = Vec::with_capacity(self.nodes.len());
        let mut index = HashMap::with_capacity(self.nodes.len());
        for (i, (id, labels)) in self.nodes.iter().enumerate() {
            if !labels.iter().any(NodeLabel::is_generic) {
                return Err(ModelError::MissingGenericLabel { graph: self.id.clone(), node: id.clone() });
            }
            index.insert(id.clone(), i);
            nodes.push(Node { id: id.clone(), labels: labels.clone() });
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (src, dst, label) in &self.edges {
            let lookup = |id: &String| {
                index.get(id).copied().ok_or_else(|| ModelError::UnknownNode {
                    graph: self.id.clone(),
                    node: id.clone(),
                })
            };
            edges.push(Edge { src: lookup(src)?, dst: lookup(dst)?, label: *label });
        }
        Ok(ProvGraph { id: self.id.clone(), nodes, index, edges })
    }
}

/// A finite family of graphs with the union of their label sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphFamily {
    graphs: Vec<ProvGraph>,
    node_labels: BTreeSet<NodeLabel>,
    edge_labels: BTreeSet<EdgeLabel>,
}

impl GraphFamily {
    pub fn new(graphs: Vec<ProvGraph>) -> Result<Self, ModelError> {
        let mut seen = HashSet::with_capacity(graphs.len());
        for g in &graphs {
            if !seen.insert(g.id()) {
                return Err(ModelError::DuplicateGraph(g.id().to_string()));
            }
        }
        let node_labels = graphs.iter().flat_map(|g| g.nodes.iter().flat_map(|n| n.labels.iter().cloned())).collect();
        let edge_labels = graphs.iter().flat_map(|g| g.edges.iter().map(|e| e.label)).collect();
        Ok(GraphFamily { graphs, node_labels, edge_labels })
    }

    pub fn graphs(&self) -> &[ProvGraph] {
        &self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn node_label_universe(&self) -> &BTreeSet<NodeLabel> {
        &self.node_labels
    }

    pub fn edge_label_universe(&self) -> &BTreeSet<EdgeLabel> {
        &self.edge_labels
    }

    pub fn total_edges(&self) -> usize {
        self.graphs.iter().map(ProvGraph::edge_count).sum()
    }

    pub fn total_nodes(&self) -> usize {
        self.graphs.iter().map(ProvGraph::node_count).sum()
    }

    pub fn position(&self, graph_id: &str) -> Option<usize> {
        self.graphs.iter().position(|g| g.id() == graph_id)
    }

    pub fn into_graphs(self) -> Vec<ProvGraph> {
        self.graphs
    }
}

/// A graph family with one class label per graph.
///
/// Class labels live here and never as node labels, so they cannot leak
/// into features.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    family: GraphFamily,
    labels: Vec<String>,
    /// Free-form generation / ingestion record.
    pub meta: serde_json::Value,
}

impl Dataset {
    pub fn new(graphs: Vec<ProvGraph>, labels: Vec<String>) -> Result<Self, ModelError> {
        if graphs.len() != labels.len() {
            return Err(ModelError::LabelCount { graphs: graphs.len(), labels: labels.len() });
        }
        Ok(Dataset { family: GraphFamily::new(graphs)?, labels, meta: serde_json::Value::Null })
    }

    pub fn empty() -> Self {
        Dataset { family: GraphFamily::default(), labels: Vec::new(), meta: serde_json::Value::Null }
    }

    pub fn with_meta(mut self, meta: serde_json::Value) -> Self {
        self.meta = meta;
        self
    }

    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    pub fn graphs(&self) -> &[ProvGraph] {
        self.family.graphs()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_of(&self, graph_id: &str) -> Option<&str> {
        self.family.position(graph_id).map(|i| self.labels[i].as_str())
    }

    /// Distinct class labels, sorted.
    pub fn classes(&self) -> Vec<String> {
        let set: BTreeSet<&String> = self.labels.iter().collect();
        set.into_iter().cloned().collect()
    }

    /// Class index of every graph, indices into [`Dataset::classes`].
    pub fn class_indices(&self) -> Vec<usize> {
        let classes = self.classes();
        self.labels.iter().map(|l| classes.binary_search(l).expect("label is a class")).collect()
    }

    pub fn class_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for l in &self.labels {
            *counts.entry(l.clone()).or_insert(0) += 1;
        }
        counts
    }

    /// The sub-dataset made of the given positions, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Dataset, ModelError> {
        let graphs = indices.iter().map(|&i| self.family.graphs[i].clone()).collect();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(Dataset::new(graphs, labels)?.with_meta(self.meta.clone()))
    }

    /// Appends another dataset; graph ids must stay unique.
    pub fn concat(self, other: Dataset) -> Result<Dataset, ModelError> {
        let meta = self.meta;
        let mut graphs = self.family.into_graphs();
        graphs.extend(other.family.into_graphs());
        let mut labels = self.labels;
        labels.extend(other.labels);
        Ok(Dataset::new(graphs, labels)?.with_meta(meta))
    }

    pub fn into_parts(self) -> (GraphFamily, Vec<String>) {
        (self.family, self.labels)
    }
}
