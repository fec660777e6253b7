use std::fmt;

use super::graph::ProvGraph;
use super::labels::{EdgeLabel, NodeLabel};

/// An edge whose endpoint kinds disagree with the PROV label table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Advisory {
    pub edge: usize,
    pub src: String,
    pub dst: String,
    pub label: EdgeLabel,
    pub message: String,
}

impl fmt::Display for Advisory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge #{} ({}, {}, {}): {}", self.edge, self.src, self.dst, self.label, self.message)
    }
}

/// Checks every edge against the source/destination kinds of its label.
///
/// Advisory only: the graph is never rejected. One advisory per offending
/// edge, in edge order.
pub fn validate_labels(g: &ProvGraph) -> Vec<Advisory> {
    let nodes = g.nodes();
    let mut out = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        let (want_src, want_dst) = e.label.endpoint_kinds();
        let src = &nodes[e.src];
        let dst = &nodes[e.dst];
        let mut problems = Vec::new();
        if !src.labels.contains(&NodeLabel::Generic(want_src)) {
            problems.push(format!("source should be {want_src}"));
        }
        if !dst.labels.contains(&NodeLabel::Generic(want_dst)) {
            problems.push(format!("destination should be {want_dst}"));
        }
        if !problems.is_empty() {
            out.push(Advisory {
                edge: k,
                src: src.id.clone(),
                dst: dst.id.clone(),
                label: e.label,
                message: problems.join(", "),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(src: NodeLabel, dst: NodeLabel) -> ProvGraph {
        let mut b = ProvGraph::builder("g");
        b.node("x", [src]).node("y", [dst]).edge("x", "y", EdgeLabel::Gen);
        b.build().unwrap()
    }

    #[test]
    fn conforming_generation_has_no_advisories() {
        assert!(validate_labels(&two(NodeLabel::ENTITY, NodeLabel::ACTIVITY)).is_empty());
    }

    #[test]
    fn inverted_generation_yields_one_advisory() {
        let adv = validate_labels(&two(NodeLabel::ACTIVITY, NodeLabel::ENTITY));
        assert_eq!(adv.len(), 1);
        assert_eq!(adv[0].src, "x");
        assert_eq!(adv[0].label, EdgeLabel::Gen);
        assert!(adv[0].to_string().contains("(x, y, gen)"));
    }

    #[test]
    fn empty_graph_has_no_advisories() {
        let g = ProvGraph::builder("empty").build().unwrap();
        assert!(validate_labels(&g).is_empty());
    }

    #[test]
    fn multi_kind_nodes_satisfy_either_role() {
        let mut b = ProvGraph::builder("g");
        b.node("x", [NodeLabel::ENTITY, NodeLabel::ACTIVITY])
            .node("y", [NodeLabel::ENTITY])
            .edge("x", "y", EdgeLabel::Der)
            .edge("x", "y", EdgeLabel::Use);
        assert!(validate_labels(&b.build().unwrap()).is_empty());
    }
}
