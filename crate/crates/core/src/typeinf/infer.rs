//! Layer-propagation inference of h-types for every node of a family.
//!
//! Depth `i` types are built from depth `i-1` types of forward neighbours:
//! an edge `(v, u)` whose target still has an `(i-1)`-walk contributes its
//! label to τ_i(v) and unions u's τ_j into v's τ_j for `j < i`. Each depth
//! touches every edge once with `O(i)` constant-size set unions, so the
//! total cost is `O(h²·M)`.

use std::collections::HashMap;

use super::ptype::{NodeSet, PType};
use super::TypeAssignment;
use crate::exec::Exec;
use crate::model::{EdgeSet, GraphFamily, LabelMode, NodeLabel, ProvGraph};

pub(crate) const NONE: u32 = u32::MAX;

/// Dense ids for the node labels of a family, assigned in label order.
struct LabelInterner {
    ids: HashMap<NodeLabel, usize>,
    labels: Vec<NodeLabel>,
    words: usize,
}

impl LabelInterner {
    fn new(fam: &GraphFamily, mode: LabelMode) -> Self {
        let labels: Vec<NodeLabel> = fam.node_label_universe().iter().filter(|l| mode.keeps(l)).cloned().collect();
        let ids = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let words = labels.len().div_ceil(64).max(1);
        LabelInterner { ids, labels, words }
    }

    fn resolve(&self, bits: &[u64]) -> NodeSet {
        let mut set = NodeSet::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                set.insert(self.labels[w * 64 + b].clone());
                rest &= rest - 1;
            }
        }
        set
    }
}

/// A type in interned form: edge-layer bitmasks outermost first, then the
/// terminal label bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
struct RawType {
    edges: Box<[u16]>,
    terms: Box<[u64]>,
}

/// Per-depth distinct types of one graph and the slot of every node.
struct LocalDepth {
    table: Vec<RawType>,
    slots: Vec<u32>,
}

fn collect_depth(n: usize, depth: usize, layers: &[u16], terms: &[u64], alive: &[bool], words: usize) -> LocalDepth {
    let mut index: HashMap<RawType, u32> = HashMap::new();
    let mut table = Vec::new();
    let mut slots = vec![NONE; n];
    for v in 0..n {
        if !alive[v] {
            continue;
        }
        let raw = RawType {
            edges: (0..depth).rev().map(|j| layers[v * depth + j]).collect(),
            terms: terms[v * words..(v + 1) * words].into(),
        };
        let id = *index.entry(raw).or_insert_with_key(|raw| {
            table.push(raw.clone());
            (table.len() - 1) as u32
        });
        slots[v] = id;
    }
    LocalDepth { table, slots }
}

fn infer_graph(g: &ProvGraph, h: usize, mode: LabelMode, interner: &LabelInterner) -> Vec<LocalDepth> {
    let n = g.node_count();
    let w = interner.words;
    let mut terms = vec![0u64; n * w];
    for (v, node) in g.nodes().iter().enumerate() {
        for l in node.labels_in(mode) {
            let id = interner.ids[l];
            terms[v * w + id / 64] |= 1 << (id % 64);
        }
    }
    let mut alive = vec![true; n];
    // τ_j of the current depth lives at layers[v * depth + (j - 1)].
    let mut layers: Vec<u16> = Vec::new();
    let mut out = Vec::with_capacity(h + 1);
    out.push(collect_depth(n, 0, &layers, &terms, &alive, w));

    for i in 1..=h {
        let mut next_layers = vec![0u16; n * i];
        let mut next_terms = vec![0u64; n * w];
        let mut next_alive = vec![false; n];
        for e in g.edges() {
            let (v, u) = (e.src, e.dst);
            if !alive[u] {
                continue;
            }
            next_alive[v] = true;
            let row = &mut next_layers[v * i..(v + 1) * i];
            row[i - 1] |= e.label.bit();
            let prev = &layers[u * (i - 1)..(u + 1) * (i - 1)];
            for (dst, src) in row.iter_mut().zip(prev) {
                *dst |= *src;
            }
            for k in 0..w {
                next_terms[v * w + k] |= terms[u * w + k];
            }
        }
        layers = next_layers;
        terms = next_terms;
        alive = next_alive;
        out.push(collect_depth(n, i, &layers, &terms, &alive, w));
    }
    out
}

/// Infers φ⁰ … φʰ for every node of every graph in the family.
pub fn infer_types(fam: &GraphFamily, h: usize, mode: LabelMode) -> TypeAssignment {
    infer_types_with(fam, h, mode, Exec::default())
}

/// [`infer_types`] with an explicit execution strategy. Graphs are
/// processed independently; the merge into family-wide tables runs in
/// graph order, so the result does not depend on scheduling.
pub fn infer_types_with(fam: &GraphFamily, h: usize, mode: LabelMode, exec: Exec) -> TypeAssignment {
    let interner = LabelInterner::new(fam, mode);
    let per_graph = exec.map_slice(fam.graphs(), |g| infer_graph(g, h, mode, &interner));

    let mut global: Vec<HashMap<RawType, u32>> = vec![HashMap::new(); h + 1];
    let mut raw_tables: Vec<Vec<RawType>> = vec![Vec::new(); h + 1];
    let mut slots = Vec::with_capacity(per_graph.len());
    for depths in per_graph {
        let mut graph_slots = Vec::with_capacity(h + 1);
        for (d, local) in depths.into_iter().enumerate() {
            let remap: Vec<u32> = local
                .table
                .into_iter()
                .map(|raw| {
                    *global[d].entry(raw).or_insert_with_key(|raw| {
                        raw_tables[d].push(raw.clone());
                        (raw_tables[d].len() - 1) as u32
                    })
                })
                .collect();
            graph_slots.push(local.slots.into_iter().map(|s| if s == NONE { NONE } else { remap[s as usize] }).collect());
        }
        slots.push(graph_slots);
    }

    let tables = raw_tables
        .into_iter()
        .map(|table| {
            table
                .into_iter()
                .map(|raw| PType::Typed {
                    edge_layers: raw.edges.iter().map(|&b| EdgeSet::from_bits(b)).collect(),
                    terminal: interner.resolve(&raw.terms),
                })
                .collect()
        })
        .collect();

    TypeAssignment::from_parts(
        h,
        mode,
        fam.graphs().iter().map(|g| g.id().to_string()).collect(),
        fam.graphs().iter().map(|g| g.nodes().iter().map(|n| n.id.clone()).collect()).collect(),
        tables,
        slots,
    )
}
