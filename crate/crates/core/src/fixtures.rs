//! Small hand-built graphs with known types, used by tests, benches and
//! the `explain` examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{EdgeLabel, GenericKind, GraphFamily, NodeLabel, ProvGraph};

fn app(name: &str) -> NodeLabel {
    NodeLabel::app(name).expect("fixture labels are valid")
}

/// A hospital-admission trace: a person specialised into successive
/// patient states, admitted then treated, each activity associated with a
/// ward.
///
/// Nodes: `person13`, `patient7_0` … `patient7_3`, `admitting3`,
/// `treating5`, `ward27`, `ward31`.
pub fn mimic_fixture() -> ProvGraph {
    use EdgeLabel::*;
    let ent = NodeLabel::ENTITY;
    let patient = || [NodeLabel::ENTITY, app("mimic:Patient")];
    let mut b = ProvGraph::builder("mimic");
    b.node("person13", [ent.clone(), app("mimic:Person")])
        .node("patient7_0", patient())
        .node("patient7_1", patient())
        .node("patient7_2", patient())
        .node("patient7_3", [ent, app("mimic:Patient"), app("mimic:DischargedPatient")])
        .node("admitting3", [NodeLabel::ACTIVITY, app("mimic:Admitting")])
        .node("treating5", [NodeLabel::ACTIVITY, app("mimic:Treating")])
        .node("ward27", [NodeLabel::AGENT, app("mimic:Ward")])
        .node("ward31", [NodeLabel::AGENT, app("mimic:Ward")]);
    b.edge("patient7_0", "person13", Spe)
        .edge("patient7_1", "patient7_0", Der)
        .edge("admitting3", "patient7_1", Use)
        .edge("admitting3", "ward27", Waw)
        .edge("patient7_2", "admitting3", Gen)
        .edge("patient7_2", "patient7_1", Der)
        .edge("treating5", "patient7_2", Use)
        .edge("treating5", "ward31", Waw)
        .edge("patient7_3", "treating5", Gen)
        .edge("patient7_3", "patient7_2", Der);
    b.build().expect("fixture is well formed")
}

/// A generic-label graph whose depth-0 and depth-1 count vectors, in
/// canonical universe order, are (5, 2, 2) and (2, 1, 1, 2).
///
/// It is built for its counts, not for PROV conformance: `a1` and `a2`
/// use an activity.
pub fn vec_fixture() -> ProvGraph {
    use EdgeLabel::*;
    let mut b = ProvGraph::builder("vec");
    for a in ["a1", "a2", "a3", "a4", "a5"] {
        b.node(a, [NodeLabel::Generic(GenericKind::Activity)]);
    }
    b.node("g1", [NodeLabel::AGENT]).node("g2", [NodeLabel::AGENT]);
    b.node("e1", [NodeLabel::ENTITY]).node("e2", [NodeLabel::ENTITY]);
    b.edge("a1", "a3", Use)
        .edge("a1", "g1", Waw)
        .edge("a2", "a3", Use)
        .edge("a2", "g2", Waw)
        .edge("e1", "e2", Spe)
        .edge("a3", "e2", Der)
        .edge("e2", "e1", Der)
        .edge("e2", "a5", Gen)
        .edge("a4", "e1", Der)
        .edge("a4", "a5", Gen);
    b.build().expect("fixture is well formed")
}

fn pattern(id: &str, extra_chain: bool) -> ProvGraph {
    use EdgeLabel::*;
    let mut b = ProvGraph::builder(id);
    for e in ["r", "e1", "e2", "e3"] {
        b.node(e, [NodeLabel::ENTITY]);
    }
    b.node("a1", [NodeLabel::ACTIVITY]).node("a2", [NodeLabel::ACTIVITY]);
    b.edge("r", "e1", Der).edge("r", "a1", Gen).edge("e1", "e2", Der).edge("e1", "a2", Gen).edge("a1", "e3", Use);
    if extra_chain {
        b.node("e4", [NodeLabel::ENTITY]).node("e5", [NodeLabel::ENTITY]);
        b.edge("r", "e4", Der).edge("e4", "e5", Der);
    }
    b.build().expect("fixture is well formed")
}

/// Root `r` with an extra derivation chain on top of [`pattern2`]; `r`
/// has the same 2-type in both but a different WL neighbourhood.
pub fn pattern1() -> ProvGraph {
    pattern("pattern1", true)
}

pub fn pattern2() -> ProvGraph {
    pattern("pattern2", false)
}

/// Size limits for [`random_graph`].
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_nodes: usize,
    pub max_edges: usize,
    /// Size of the application-label pool (`x:L0`, `x:L1`, …).
    pub app_labels: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape { max_nodes: 25, max_edges: 60, app_labels: 4 }
    }
}

/// A random multigraph: 1 to `max_nodes` nodes, each with one generic
/// label and up to two application labels, and up to `max_edges` edges
/// with arbitrary endpoints and labels (self-loops, cycles and parallel
/// edges included).
pub fn random_graph(id: impl Into<String>, rng: &mut impl Rng, shape: RandomShape) -> ProvGraph {
    let n = rng.random_range(1..=shape.max_nodes);
    let m = rng.random_range(0..=shape.max_edges);
    let mut b = ProvGraph::builder(id);
    for v in 0..n {
        let mut labels = vec![NodeLabel::Generic(GenericKind::ALL[rng.random_range(0..3)])];
        if shape.app_labels > 0 {
            for _ in 0..rng.random_range(0..=2) {
                labels.push(app(&format!("x:L{}", rng.random_range(0..shape.app_labels))));
            }
        }
        b.node(format!("n{v}"), labels);
    }
    for _ in 0..m {
        let (s, d) = (rng.random_range(0..n), rng.random_range(0..n));
        let label = EdgeLabel::ALL[rng.random_range(0..EdgeLabel::ALL.len())];
        b.edge(format!("n{s}"), format!("n{d}"), label);
    }
    b.build().expect("random graphs are well formed")
}

/// `n` random graphs `r0 … r{n-1}` from `seed`.
pub fn random_family(seed: u64, n: usize, shape: RandomShape) -> GraphFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs = (0..n).map(|i| random_graph(format!("r{i}"), &mut rng, shape)).collect();
    GraphFamily::new(graphs).expect("distinct ids")
}
