use std::io::{self, Write};

use ndarray::Array2;

use super::{FeatureMatrix, KernelError};
use crate::exec::Exec;
use crate::sparse;

/// A symmetric matrix of exact kernel values with graph ids on both axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    ids: Vec<String>,
    values: Vec<u64>,
}

impl GramMatrix {
    /// Wraps a row-major `n × n` matrix.
    pub fn new(ids: Vec<String>, values: Vec<u64>) -> Result<Self, KernelError> {
        if values.len() != ids.len() * ids.len() {
            return Err(KernelError::Shape(format!("{} values for {} graphs", values.len(), ids.len())));
        }
        Ok(GramMatrix { ids, values })
    }

    /// Gram matrix of explicit sparse feature maps, one block list per graph.
    pub(crate) fn from_blocks(ids: Vec<String>, rows: &[Vec<&[(u32, u64)]>], exec: Exec) -> Result<Self, KernelError> {
        let values = sparse::gram_from_blocks(rows, exec).map_err(|(p, q)| KernelError::Overflow { p, q })?;
        Ok(GramMatrix { ids, values })
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.values[p * self.n() + q]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Entry-wise sum; errors on overflow or mismatched ids.
    pub fn checked_add(&self, other: &GramMatrix) -> Result<GramMatrix, KernelError> {
        if self.ids != other.ids {
            return Err(KernelError::Shape("Gram matrices over different graphs".into()));
        }
        let n = self.n();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(k, (a, b))| a.checked_add(*b).ok_or(KernelError::Overflow { p: k / n, q: k % n }))
            .collect::<Result<_, _>>()?;
        Ok(GramMatrix { ids: self.ids.clone(), values })
    }

    pub fn to_array(&self) -> Array2<f64> {
        let n = self.n();
        Array2::from_shape_fn((n, n), |(p, q)| self.get(p, q) as f64)
    }

    /// Cosine normalisation K_pq / √(K_pp K_qq).
    pub fn normalized(&self) -> Result<Array2<f64>, KernelError> {
        let n = self.n();
        if let Some(p) = (0..n).find(|&p| self.get(p, p) == 0) {
            return Err(KernelError::ZeroDiagonal(self.ids[p].clone()));
        }
        let diag: Vec<f64> = (0..n).map(|p| (self.get(p, p) as f64).sqrt()).collect();
        Ok(Array2::from_shape_fn((n, n), |(p, q)| {
            if p == q {
                1.0
            } else {
                self.get(p, q) as f64 / (diag[p] * diag[q])
            }
        }))
    }

    /// `graph_id` header row and column, integer cells.
    pub fn write_csv<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        write_header(&self.ids, w)?;
        let n = self.n();
        for (p, id) in self.ids.iter().enumerate() {
            write!(w, "{id}")?;
            for v in &self.values[p * n..(p + 1) * n] {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

fn write_header<W: Write + ?Sized>(ids: &[String], w: &mut W) -> io::Result<()> {
    write!(w, "graph_id")?;
    for id in ids {
        write!(w, ",{id}")?;
    }
    writeln!(w)
}

/// Writes a real-valued Gram matrix with 17 significant digits per cell.
pub fn write_float_gram_csv<W: Write + ?Sized>(ids: &[String], values: &Array2<f64>, w: &mut W) -> io::Result<()> {
    write_header(ids, w)?;
    for (p, id) in ids.iter().enumerate() {
        write!(w, "{id}")?;
        for v in values.row(p) {
            write!(w, ",{v:.16e}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// k^h between graphs `p` and `q`: Σ_{s≤h} ⟨VEC^s(p), VEC^s(q)⟩.
pub fn kernel_value(fm: &FeatureMatrix, p: usize, q: usize, h: usize) -> Result<u64, KernelError> {
    if h > fm.h() {
        return Err(KernelError::DepthTooLarge { requested: h, available: fm.h() });
    }
    for g in [p, q] {
        if g >= fm.len() {
            return Err(KernelError::GraphIndex(g));
        }
    }
    (0..=h).try_fold(0u64, |acc, s| {
        sparse::dot(fm.sparse_row(p, s), fm.sparse_row(q, s))
            .and_then(|v| acc.checked_add(v))
            .ok_or(KernelError::Overflow { p, q })
    })
}

/// The provenance-kernel Gram matrix at depth `h`.
pub fn gram(fm: &FeatureMatrix, h: usize) -> Result<GramMatrix, KernelError> {
    gram_with(fm, h, Exec::default())
}

pub fn gram_with(fm: &FeatureMatrix, h: usize, exec: Exec) -> Result<GramMatrix, KernelError> {
    if h > fm.h() {
        return Err(KernelError::DepthTooLarge { requested: h, available: fm.h() });
    }
    let rows: Vec<Vec<&[(u32, u64)]>> = (0..fm.len()).map(|g| fm.blocks(g, h)).collect();
    GramMatrix::from_blocks(fm.graph_ids().to_vec(), &rows, exec)
}
