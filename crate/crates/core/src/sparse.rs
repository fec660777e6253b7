//! Sorted sparse count vectors and exact Gram assembly.

use crate::exec::Exec;

/// `(index, count)` pairs sorted by index, counts non-zero.
pub type SparseVec = Vec<(u32, u64)>;

/// Builds a sparse vector from raw indices (one occurrence each).
pub fn from_occurrences(mut idx: Vec<u32>) -> SparseVec {
    idx.sort_unstable();
    let mut out: SparseVec = Vec::new();
    for i in idx {
        match out.last_mut() {
            Some((j, c)) if *j == i => *c += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// Exact dot product; `None` on u64 overflow.
pub fn dot(a: &[(u32, u64)], b: &[(u32, u64)]) -> Option<u64> {
    let (mut i, mut j) = (0, 0);
    let mut acc = 0u64;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = acc.checked_add(a[i].1.checked_mul(b[j].1)?)?;
                i += 1;
                j += 1;
            }
        }
    }
    Some(acc)
}

/// Row-major `n × n` matrix of Σ_blocks ⟨rows[p][b], rows[q][b]⟩.
///
/// Errors with the first overflowing pair `(p, q)`.
pub fn gram_from_blocks(rows: &[Vec<&[(u32, u64)]>], exec: Exec) -> Result<Vec<u64>, (usize, usize)> {
    let n = rows.len();
    let upper: Vec<Result<Vec<u64>, (usize, usize)>> = exec.map_range(n, |p| {
        (p..n)
            .map(|q| {
                rows[p]
                    .iter()
                    .zip(&rows[q])
                    .try_fold(0u64, |acc, (a, b)| acc.checked_add(dot(a, b)?))
                    .ok_or((p, q))
            })
            .collect()
    });
    let mut out = vec![0u64; n * n];
    for (p, row) in upper.into_iter().enumerate() {
        for (k, v) in row?.into_iter().enumerate() {
            let q = p + k;
            out[p * n + q] = v;
            out[q * n + p] = v;
        }
    }
    Ok(out)
}
