use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::graph::{GraphBuilder, ProvGraph};
use super::labels::EdgeLabel;
use super::ModelError;

/// The subgraph induced by `v` and every node with a walk to `v`.
pub fn dependency_subgraph(g: &ProvGraph, v: &str) -> Result<ProvGraph, ModelError> {
    let root = g
        .node_index(v)
        .ok_or_else(|| ModelError::UnknownNode { graph: g.id().to_string(), node: v.to_string() })?;
    let n = g.node_count();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        preds[e.dst].push(e.src);
    }
    let mut keep = vec![false; n];
    keep[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &p in &preds[u] {
            if !keep[p] {
                keep[p] = true;
                queue.push_back(p);
            }
        }
    }

    let mut b = GraphBuilder::new(format!("{}/dep/{}", g.id(), v));
    for (i, node) in g.nodes().iter().enumerate() {
        if keep[i] {
            b.node(node.id.clone(), node.labels.iter().cloned());
        }
    }
    let nodes = g.nodes();
    for e in g.edges() {
        if keep[e.src] && keep[e.dst] {
            b.edge(nodes[e.src].id.clone(), nodes[e.dst].id.clone(), e.label);
        }
    }
    b.build()
}

/// Node/edge counts and label histograms of one graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    /// Occurrences of each node label (a node counts once per label it carries).
    pub node_labels: BTreeMap<String, usize>,
    /// Occurrences of each edge label, parallel edges counted individually.
    pub edge_labels: BTreeMap<EdgeLabel, usize>,
}

pub fn graph_summary(g: &ProvGraph) -> GraphSummary {
    let mut s = GraphSummary { nodes: g.node_count(), edges: g.edge_count(), ..Default::default() };
    for node in g.nodes() {
        for l in &node.labels {
            *s.node_labels.entry(l.as_str().to_string()).or_insert(0) += 1;
        }
    }
    for e in g.edges() {
        *s.edge_labels.entry(e.label).or_insert(0) += 1;
    }
    s
}
