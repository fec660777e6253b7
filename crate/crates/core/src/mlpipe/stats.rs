//! Wilcoxon-Mann-Whitney rank-sum test.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::MlError;

/// Both samples at most this large use the exact null distribution.
const EXACT_MAX: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MannWhitney {
    /// U of the first sample, with midranks for ties.
    pub u: f64,
    /// Two-sided p-value.
    pub p: f64,
    pub exact: bool,
}

/// Midranks (1-based) of the pooled values, in input order.
fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let r = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = r;
        }
        start = end;
    }
    ranks
}

/// Two-sided p from the exact permutation distribution of the rank sum,
/// conditional on the observed ties. Doubled midranks are integers, so the
/// distribution is counted by a subset-sum recursion.
fn exact_p(ranks: &[f64], na: usize, observed: u64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    // ways[k][s]: subsets of size k with doubled rank sum s.
    let mut ways = vec![vec![0f64; max_sum + 1]; na + 1];
    ways[0][0] = 1.0;
    for &d in &doubled {
        for k in (1..=na).rev() {
            for s in (d..=max_sum).rev() {
                let add = ways[k - 1][s - d];
                if add != 0.0 {
                    ways[k][s] += add;
                }
            }
        }
    }
    let total: f64 = ways[na].iter().sum();
    let obs = observed as usize;
    let le: f64 = ways[na][..=obs].iter().sum();
    let ge: f64 = ways[na][obs..].iter().sum();
    (2.0 * le.min(ge) / total).min(1.0)
}

/// U statistic of `a` against `b` and its two-sided p-value.
///
/// Exact when both samples have at most eight values; otherwise the normal
/// approximation with tie and continuity corrections. Samples whose pooled
/// values are all equal give p = 1.
pub fn mannwhitney_u(a: &[f64], b: &[f64]) -> Result<MannWhitney, MlError> {
    if a.is_empty() || b.is_empty() {
        return Err(MlError::EmptySample);
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(MlError::InvalidParam("non-finite sample value".into()));
    }
    let (na, nb) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let ra: f64 = ranks[..na].iter().sum();
    let u = ra - (na * (na + 1)) as f64 / 2.0;
    let exact = na <= EXACT_MAX && nb <= EXACT_MAX;
    if pooled.iter().all(|&v| v == pooled[0]) {
        return Ok(MannWhitney { u, p: 1.0, exact });
    }
    if exact {
        let observed = (2.0 * ra).round() as u64;
        return Ok(MannWhitney { u, p: exact_p(&ranks, na, observed), exact });
    }
    let n = (na + nb) as f64;
    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    for group in sorted.chunk_by(|x, y| x == y) {
        let t = group.len() as f64;
        tie_term += t * t * t - t;
    }
    let mean = (na * nb) as f64 / 2.0;
    let var = (na * nb) as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return Ok(MannWhitney { u, p: 1.0, exact });
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let std = Normal::standard();
    let p = (2.0 * (1.0 - std.cdf(z))).min(1.0);
    Ok(MannWhitney { u, p, exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumerates every way of drawing |a| of the pooled values.
    fn oracle(a: &[f64], b: &[f64]) -> (f64, f64) {
        let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
        let n = pooled.len();
        let u_of = |mask: u32| {
            let mut u = 0.0;
            for i in 0..n {
                if mask & (1 << i) == 0 {
                    continue;
                }
                for j in 0..n {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    u += if pooled[i] > pooled[j] {
                        1.0
                    } else if pooled[i] == pooled[j] {
                        0.5
                    } else {
                        0.0
                    };
                }
            }
            u
        };
        let observed = u_of((1 << a.len()) - 1);
        let (mut le, mut ge, mut total) = (0.0, 0.0, 0.0);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != a.len() {
                continue;
            }
            let u = u_of(mask);
            total += 1.0;
            if u <= observed + 1e-9 {
                le += 1.0;
            }
            if u >= observed - 1e-9 {
                ge += 1.0;
            }
        }
        let p = if pooled.iter().all(|&v| v == pooled[0]) { 1.0 } else { (2.0 * f64::min(le, ge) / total).min(1.0) };
        (observed, p)
    }

    #[test]
    fn separated_triples() {
        let r = mannwhitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(r.u, 0.0);
        assert!((r.p - 0.1).abs() < 1e-15);
        assert!(r.exact);
    }

    #[test]
    fn identical_samples() {
        let a = [0.8, 0.9, 0.85, 0.9];
        let r = mannwhitney_u(&a, &a).unwrap();
        assert_eq!(r.u, 8.0);
        assert_eq!(r.p, 1.0);
        let flat = vec![0.5; 30];
        assert_eq!(mannwhitney_u(&flat, &flat).unwrap().p, 1.0);
        let big: Vec<f64> = (0..30).map(f64::from).collect();
        assert_eq!(mannwhitney_u(&big, &big).unwrap().p, 1.0);
    }

    #[test]
    fn matches_oracle_on_small_samples_with_ties() {
        // Values on a coarse grid so ties are frequent.
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 5) as f64
        };
        for na in 1..=EXACT_MAX {
            for nb in 1..=EXACT_MAX {
                let a: Vec<f64> = (0..na).map(|_| next()).collect();
                let b: Vec<f64> = (0..nb).map(|_| next()).collect();
                let r = mannwhitney_u(&a, &b).unwrap();
                let (u, p) = oracle(&a, &b);
                assert_eq!(r.u, u);
                assert!((r.p - p).abs() < 1e-12, "{na},{nb}: {} vs {p}", r.p);
            }
        }
    }

    #[test]
    fn large_samples_use_normal_approximation() {
        let a: Vec<f64> = (0..100).map(|i| 0.80 + 0.001 * (i % 10) as f64).collect();
        let b: Vec<f64> = (0..100).map(|i| 0.70 + 0.001 * (i % 10) as f64).collect();
        let r = mannwhitney_u(&a, &b).unwrap();
        assert!(!r.exact);
        assert_eq!(r.u, 10000.0);
        assert!(r.p < 1e-10);
        assert!(mannwhitney_u(&[], &a).is_err());
    }
}
