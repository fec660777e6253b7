//! Repeated stratified k-fold cross-validation on a precomputed Gram matrix.

use ndarray::{Array2, Axis};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{mannwhitney_u, svm_train, MlError, SvmParams};
use crate::exec::Exec;

#[derive(Clone, Debug)]
pub struct CvConfig {
    pub k: usize,
    pub repeats: usize,
    pub seed: u64,
    pub svm: SvmParams,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig { k: 10, repeats: 10, seed: 0, svm: SvmParams::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    /// One accuracy per (repeat, fold), repeat-major.
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub ci95: [f64; 2],
    /// Wall time of type inference, featurisation and Gram computation.
    pub featurize_seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
}

impl CvReport {
    pub fn from_accuracies(accuracies: Vec<f64>) -> Self {
        let n = accuracies.len();
        let mean = accuracies.iter().sum::<f64>() / n as f64;
        let ci95 = if n < 2 {
            [mean, mean]
        } else {
            let var = accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let t = StudentsT::new(0.0, 1.0, (n - 1) as f64).expect("valid dof").inverse_cdf(0.975);
            let half = t * (var / n as f64).sqrt();
            [mean - half, mean + half]
        };
        CvReport { accuracies, mean, ci95, featurize_seconds: 0.0, method: None }
    }
}

/// Fold of every sample for one repeat.
///
/// Stratified: each class is shuffled and dealt round-robin, continuing
/// where the previous class stopped so fold sizes differ by at most one.
/// Falls back to a plain shuffled deal (with a warning) when a class has
/// fewer than `k` members.
pub fn fold_assignment(classes: &[usize], k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n_classes = classes.iter().max().map_or(0, |&m| m + 1);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &c) in classes.iter().enumerate() {
        groups[c].push(i);
    }
    let stratify = groups.iter().all(|g| g.is_empty() || g.len() >= k);
    if !stratify {
        log::warn!("a class has fewer than {k} members; using unstratified folds");
        groups = vec![(0..classes.len()).collect()];
    }
    let mut folds = vec![0; classes.len()];
    let mut next = 0;
    for group in &mut groups {
        group.shuffle(rng);
        for &i in group.iter() {
            folds[i] = next;
            next = (next + 1) % k;
        }
    }
    folds
}

fn fold_accuracy(gram: &Array2<f64>, classes: &[usize], n_classes: usize, folds: &[usize], f: usize, svm: &SvmParams) -> Result<f64, MlError> {
    let (test, train): (Vec<usize>, Vec<usize>) = (0..classes.len()).partition(|&i| folds[i] == f);
    let k_train = gram.select(Axis(0), &train).select(Axis(1), &train);
    let y: Vec<usize> = train.iter().map(|&i| classes[i]).collect();
    let model = svm_train(k_train.view(), &y, n_classes, svm)?;
    let mut correct = 0;
    let mut row = vec![0.0; train.len()];
    for &t in &test {
        for (slot, &j) in row.iter_mut().zip(&train) {
            *slot = gram[[t, j]];
        }
        if model.predict(&row)? == classes[t] {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.len() as f64)
}

/// Repeated k-fold cross-validation of an SVM on a precomputed kernel.
///
/// `labels` are class names; classes are indexed in sorted order. Each
/// repeat draws fresh folds from a stream of `seed`; folds are evaluated
/// concurrently and collected in (repeat, fold) order.
pub fn repeated_kfold(labels: &[String], gram: &Array2<f64>, cfg: &CvConfig, exec: Exec) -> Result<CvReport, MlError> {
    let n = labels.len();
    if gram.dim() != (n, n) {
        return Err(MlError::RowLength { expected: n, found: gram.nrows() });
    }
    if cfg.k < 2 || cfg.repeats == 0 {
        return Err(MlError::InvalidParam(format!("k = {}, repeats = {}", cfg.k, cfg.repeats)));
    }
    if n < cfg.k {
        return Err(MlError::TooFewSamples { n, k: cfg.k });
    }
    let mut names: Vec<&str> = labels.iter().map(String::as_str).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() < 2 {
        return Err(MlError::TooFewClasses(names.len()));
    }
    let classes: Vec<usize> = labels.iter().map(|l| names.binary_search(&l.as_str()).expect("known")).collect();

    let assignments: Vec<Vec<usize>> = (0..cfg.repeats)
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            fold_assignment(&classes, cfg.k, &mut rng)
        })
        .collect();
    let results = exec.map_range(cfg.repeats * cfg.k, |job| {
        let (r, f) = (job / cfg.k, job % cfg.k);
        fold_accuracy(gram, &classes, names.len(), &assignments[r], f, &cfg.svm)
    });
    let accuracies = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CvReport::from_accuracies(accuracies))
}

/// Outcome of comparing two methods at the 5% level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "=")]
    Tie,
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    #[serde(rename = "methodA")]
    pub method_a: String,
    #[serde(rename = "methodB")]
    pub method_b: String,
    #[serde(rename = "meanDiff")]
    pub mean_diff: f64,
    #[serde(rename = "U")]
    pub u: f64,
    pub p: f64,
    pub verdict: Verdict,
}

/// Rank-sum comparison of two reports' accuracies; the better mean wins
/// when p < 0.05.
pub fn compare_reports(a: &CvReport, b: &CvReport) -> Result<Comparison, MlError> {
    let mw = mannwhitney_u(&a.accuracies, &b.accuracies)?;
    let mean_diff = a.mean - b.mean;
    let verdict = if mw.p >= 0.05 {
        Verdict::Tie
    } else if mean_diff > 0.0 {
        Verdict::A
    } else if mean_diff < 0.0 {
        Verdict::B
    } else {
        Verdict::Tie
    };
    let name = |r: &CvReport, d: &str| r.method.clone().unwrap_or_else(|| d.to_string());
    Ok(Comparison { method_a: name(a, "A"), method_b: name(b, "B"), mean_diff, u: mw.u, p: mw.p, verdict })
}
