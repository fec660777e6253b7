use std::collections::BTreeMap;
use std::io::{self, Write};

use serde_json::json;

use super::{KernelError, TypeUniverse};
use crate::exec::Exec;
use crate::sparse::{self, SparseVec};
use crate::typeinf::{TypeAssignment, NONE};

/// Per-graph, per-depth count vectors aligned to a [`TypeUniverse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureMatrix {
    graph_ids: Vec<String>,
    widths: Vec<usize>,
    rows: Vec<Vec<SparseVec>>,
}

impl FeatureMatrix {
    pub fn graph_ids(&self) -> &[String] {
        &self.graph_ids
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Deepest featurized depth.
    pub fn h(&self) -> usize {
        self.widths.len().saturating_sub(1)
    }

    /// Universe size at depth `d`.
    pub fn width(&self, d: usize) -> usize {
        self.widths[d]
    }

    /// Non-zero counts of graph `g` at depth `d`.
    pub fn sparse_row(&self, g: usize, d: usize) -> &[(u32, u64)] {
        &self.rows[g][d]
    }

    pub(crate) fn blocks(&self, g: usize, h: usize) -> Vec<&[(u32, u64)]> {
        self.rows[g][..=h].iter().map(Vec::as_slice).collect()
    }

    /// VEC^d of graph `g` as a dense vector.
    pub fn dense(&self, g: usize, d: usize) -> Vec<u64> {
        let mut out = vec![0; self.widths[d]];
        for &(i, c) in &self.rows[g][d] {
            out[i as usize] = c;
        }
        out
    }

    /// Depth vectors 0..=h of graph `g` concatenated.
    pub fn dense_concat(&self, g: usize, h: usize) -> Vec<u64> {
        (0..=h).flat_map(|d| self.dense(g, d)).collect()
    }

    /// Writes `graph_id,<names…>` followed by one integer row per graph.
    pub fn write_csv<W: Write + ?Sized>(&self, universe: &TypeUniverse, w: &mut W) -> io::Result<()> {
        write!(w, "graph_id")?;
        for (name, _, _) in universe.features() {
            write!(w, ",{name}")?;
        }
        writeln!(w)?;
        for (g, id) in self.graph_ids.iter().enumerate() {
            write!(w, "{id}")?;
            for d in 0..=self.h() {
                for c in self.dense(g, d) {
                    write!(w, ",{c}")?;
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Name → `{depth, index, type}` for every feature of a universe.
pub fn sidecar(universe: &TypeUniverse) -> serde_json::Value {
    let map: BTreeMap<String, serde_json::Value> = universe
        .features()
        .map(|(name, d, t)| {
            let index = universe.index_of(t).expect("feature in its universe");
            (name, json!({"depth": d, "index": index, "type": t}))
        })
        .collect();
    serde_json::to_value(map).expect("sidecar serializes")
}

/// Counts, per graph and depth, the nodes of each universe type.
pub fn featurize(assignment: &TypeAssignment, universe: &TypeUniverse) -> Result<FeatureMatrix, KernelError> {
    featurize_with(assignment, universe, Exec::default())
}

pub fn featurize_with(
    assignment: &TypeAssignment,
    universe: &TypeUniverse,
    exec: Exec,
) -> Result<FeatureMatrix, KernelError> {
    let h = assignment.h_max();
    if h > universe.h() {
        return Err(KernelError::DepthTooLarge { requested: h, available: universe.h() });
    }
    // Assignment table slot → universe column, per depth.
    let columns: Vec<Vec<u32>> = (0..=h)
        .map(|d| {
            assignment
                .table(d)
                .iter()
                .map(|t| {
                    universe
                        .index_of(t)
                        .map(|i| i as u32)
                        .ok_or_else(|| KernelError::StaleUniverse { depth: d, ty: t.to_string() })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let rows = exec.map_range(assignment.graph_count(), |g| {
        (0..=h)
            .map(|d| {
                let idx =
                    assignment.slots(g, d).iter().filter(|&&s| s != NONE).map(|&s| columns[d][s as usize]).collect();
                sparse::from_occurrences(idx)
            })
            .collect()
    });
    Ok(FeatureMatrix {
        graph_ids: assignment.graph_ids().to_vec(),
        widths: (0..=h).map(|d| universe.len(d)).collect(),
        rows,
    })
}
