//! Vertex-histogram, edge-histogram and Weisfeiler-Lehman subtree kernels.
//!
//! All three are explicit feature maps evaluated with exact integer dot
//! products, so their Gram matrices share the [`GramMatrix`] type and CSV
//! format with the provenance kernel.

use std::collections::{BTreeMap, BTreeSet};

use crate::exec::Exec;
use crate::kernel::{GramMatrix, KernelError};
use crate::model::{GraphFamily, LabelMode, ProvGraph};
use crate::sparse::{self, SparseVec};

fn label_set_key(g: &ProvGraph, v: usize, mode: LabelMode) -> String {
    g.nodes()[v].labels_in(mode).map(|l| l.as_str()).collect::<Vec<_>>().join(",")
}

/// Dense colour ids for label sets, assigned in sorted key order.
fn label_set_colors(fam: &GraphFamily, mode: LabelMode) -> (Vec<Vec<u32>>, usize) {
    let keys: Vec<Vec<String>> = fam
        .graphs()
        .iter()
        .map(|g| (0..g.node_count()).map(|v| label_set_key(g, v, mode)).collect())
        .collect();
    let dict: BTreeMap<&String, u32> = keys
        .iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i as u32))
        .collect();
    let colors = keys.iter().map(|ks| ks.iter().map(|k| dict[k]).collect()).collect();
    (colors, dict.len())
}

fn ids(fam: &GraphFamily) -> Vec<String> {
    fam.graphs().iter().map(|g| g.id().to_string()).collect()
}

fn gram_of(fam: &GraphFamily, features: &[Vec<SparseVec>], exec: Exec) -> Result<GramMatrix, KernelError> {
    let rows: Vec<Vec<&[(u32, u64)]>> = features.iter().map(|blocks| blocks.iter().map(Vec::as_slice).collect()).collect();
    GramMatrix::from_blocks(ids(fam), &rows, exec)
}

/// Vertex histogram: counts of nodes per label set.
pub fn vh_gram(fam: &GraphFamily, mode: LabelMode) -> Result<GramMatrix, KernelError> {
    let (colors, _) = label_set_colors(fam, mode);
    let features: Vec<Vec<SparseVec>> = colors.into_iter().map(|c| vec![sparse::from_occurrences(c)]).collect();
    gram_of(fam, &features, Exec::default())
}

/// Edge histogram: counts of edges per label, parallel edges counted
/// individually.
pub fn eh_gram(fam: &GraphFamily) -> Result<GramMatrix, KernelError> {
    let features: Vec<Vec<SparseVec>> = fam
        .graphs()
        .iter()
        .map(|g| vec![sparse::from_occurrences(g.edges().iter().map(|e| e.label as u32).collect())])
        .collect();
    gram_of(fam, &features, Exec::default())
}

/// Colour refinement over forward neighbourhoods.
///
/// Iteration 0 colours nodes by their label set. Iteration `i` colours a
/// node by its previous colour together with the sorted multiset of its
/// out-neighbours' previous colours. Compression uses a dictionary over
/// all keys of the family sorted, so ids are dense and injective.
#[derive(Clone, Debug)]
pub struct WlColoring {
    colors: Vec<Vec<Vec<u32>>>,
    palette: Vec<usize>,
}

impl WlColoring {
    pub fn compute(fam: &GraphFamily, h: usize, mode: LabelMode) -> Self {
        Self::compute_with(fam, h, mode, Exec::default())
    }

    pub fn compute_with(fam: &GraphFamily, h: usize, mode: LabelMode, exec: Exec) -> Self {
        let (first, size) = label_set_colors(fam, mode);
        let mut colors = vec![first];
        let mut palette = vec![size];
        for _ in 0..h {
            let prev = colors.last().expect("iteration 0 exists");
            let keys: Vec<Vec<(u32, Vec<u32>)>> = exec.map_range(fam.len(), |gi| {
                let g = &fam.graphs()[gi];
                let (offsets, order) = g.out_adjacency();
                (0..g.node_count())
                    .map(|v| {
                        let mut nb: Vec<u32> =
                            order[offsets[v]..offsets[v + 1]].iter().map(|&k| prev[gi][g.edges()[k].dst]).collect();
                        nb.sort_unstable();
                        (prev[gi][v], nb)
                    })
                    .collect()
            });
            let dict: BTreeMap<&(u32, Vec<u32>), u32> = keys
                .iter()
                .flatten()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .enumerate()
                .map(|(i, k)| (k, i as u32))
                .collect();
            palette.push(dict.len());
            let next = keys.iter().map(|ks| ks.iter().map(|k| dict[k]).collect()).collect();
            colors.push(next);
        }
        WlColoring { colors, palette }
    }

    /// Number of refinement rounds plus one.
    pub fn iterations(&self) -> usize {
        self.colors.len()
    }

    /// Colours of the nodes of graph `g` (in node order) at `iteration`.
    pub fn colors(&self, iteration: usize, g: usize) -> &[u32] {
        &self.colors[iteration][g]
    }

    /// Distinct colours in the family at `iteration`.
    pub fn distinct(&self, iteration: usize) -> usize {
        self.palette[iteration]
    }

    fn histograms(&self, g: usize) -> Vec<SparseVec> {
        self.colors.iter().map(|it| sparse::from_occurrences(it[g].clone())).collect()
    }
}

/// WL subtree kernel: Σ over iterations 0..=h of colour-histogram dot
/// products. Edge labels are ignored.
pub fn wl_gram(fam: &GraphFamily, h: usize, mode: LabelMode) -> Result<GramMatrix, KernelError> {
    let coloring = WlColoring::compute(fam, h, mode);
    let features: Vec<Vec<SparseVec>> = (0..fam.len()).map(|g| coloring.histograms(g)).collect();
    gram_of(fam, &features, Exec::default())
}
