//! Explicit label-walk enumeration.
//!
//! This is the exponential reference path: it materialises every label
//! sequence and is used to check [`super::infer_types`], never by it.

use std::collections::BTreeSet;

use super::ptype::{NodeSet, PType};
use super::TypeError;
use crate::model::{EdgeLabel, EdgeSet, LabelMode, ProvGraph};

/// The edge labels along a walk followed by the label set of its end node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelWalk {
    pub edge_labels: Vec<EdgeLabel>,
    pub terminal: NodeSet,
}

impl LabelWalk {
    pub fn len(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_labels.is_empty()
    }
}

/// Every distinct label-walk of length `h` starting at node `v`.
///
/// Walks with identical label sequences and end labels collapse into one.
pub fn enumerate_label_walks(
    g: &ProvGraph,
    v: &str,
    h: usize,
    mode: LabelMode,
) -> Result<BTreeSet<LabelWalk>, TypeError> {
    let start = g
        .node_index(v)
        .ok_or_else(|| TypeError::UnknownNode { graph: g.id().to_string(), node: v.to_string() })?;
    let (offsets, order) = g.out_adjacency();
    let edges = g.edges();

    // (labels so far, current node); distinct states only.
    let mut frontier: BTreeSet<(Vec<EdgeLabel>, usize)> = BTreeSet::from([(Vec::new(), start)]);
    for _ in 0..h {
        let mut next = BTreeSet::new();
        for (labels, node) in &frontier {
            for &k in &order[offsets[*node]..offsets[*node + 1]] {
                let mut extended = labels.clone();
                extended.push(edges[k].label);
                next.insert((extended, edges[k].dst));
            }
        }
        frontier = next;
    }

    let nodes = g.nodes();
    Ok(frontier
        .into_iter()
        .map(|(edge_labels, end)| LabelWalk { edge_labels, terminal: nodes[end].labels_in(mode).cloned().collect() })
        .collect())
}

/// Folds a set of length-`h` walks into the h-type: position p of every
/// walk feeds τ_{h-p}, terminal label sets feed τ_0.
pub fn type_from_walks<'a, I>(walks: I, h: usize) -> Result<PType, TypeError>
where
    I: IntoIterator<Item = &'a LabelWalk>,
{
    let mut edge_layers = vec![EdgeSet::EMPTY; h];
    let mut terminal = NodeSet::new();
    let mut any = false;
    for w in walks {
        if w.len() != h {
            return Err(TypeError::MixedWalkLengths { expected: h, found: w.len() });
        }
        any = true;
        for (p, l) in w.edge_labels.iter().enumerate() {
            edge_layers[p].insert(*l);
        }
        terminal.extend(w.terminal.iter().cloned());
    }
    if !any {
        return Ok(PType::Empty);
    }
    PType::new(edge_layers, terminal)
}
