//! C-SVM on a precomputed kernel, solved by SMO with second-order working
//! set selection.

use ndarray::{ArrayView2, Axis};

use super::MlError;

/// Curvature floor for non-positive-definite pairs.
const TAU: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SvmParams {
    pub c: f64,
    /// Stopping tolerance on the maximal KKT violation.
    pub eps: f64,
    pub max_iter: usize,
    /// Record the dual objective after every update.
    pub trace_objective: bool,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams { c: 1.0, eps: 1e-3, max_iter: 10_000_000, trace_objective: false }
    }
}

/// One binary machine: decision(x) = Σ coef_i K(sv_i, x) − rho.
#[derive(Clone, Debug)]
pub struct BinaryMachine {
    /// (training index, α_i y_i) for every α_i > 0.
    pub support: Vec<(usize, f64)>,
    pub rho: f64,
    /// Final α (one per training point).
    pub alpha: Vec<f64>,
    pub iterations: usize,
    /// Maximal KKT violation at exit.
    pub violation: f64,
    /// Dual objective ½αᵀQα − eᵀα after each update, if traced.
    pub objective: Vec<f64>,
}

impl BinaryMachine {
    pub fn decision(&self, row: &[f64]) -> f64 {
        self.support.iter().map(|&(i, c)| c * row[i]).sum::<f64>() - self.rho
    }
}

fn train_binary(k: &ArrayView2<f64>, y: &[f64], p: &SvmParams) -> BinaryMachine {
    let n = y.len();
    let c = p.c;
    let q = |i: usize, j: usize| y[i] * y[j] * k[[i, j]];
    let qd: Vec<f64> = (0..n).map(|i| k[[i, i]]).collect();
    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let mut objective = Vec::new();
    let mut iterations = 0;
    let mut violation;

    loop {
        // i maximises −y_t ∇_t over I_up.
        let mut gmax = f64::NEG_INFINITY;
        let mut gmax_idx = None;
        for t in 0..n {
            let v = -y[t] * grad[t];
            let up = if y[t] > 0.0 { alpha[t] < c } else { alpha[t] > 0.0 };
            if up && v >= gmax {
                gmax = v;
                gmax_idx = Some(t);
            }
        }
        // j minimises the second-order objective decrease over I_low.
        let mut gmax2 = f64::NEG_INFINITY;
        let mut gmin = f64::INFINITY;
        let mut gmin_idx = None;
        if let Some(i) = gmax_idx {
            for t in 0..n {
                let low = if y[t] > 0.0 { alpha[t] > 0.0 } else { alpha[t] < c };
                if !low {
                    continue;
                }
                let v = y[t] * grad[t];
                gmax2 = gmax2.max(v);
                let diff = gmax + v;
                if diff > 0.0 {
                    let curv = qd[i] + qd[t] - 2.0 * y[i] * y[t] * k[[i, t]];
                    let obj = -(diff * diff) / if curv > 0.0 { curv } else { TAU };
                    if obj <= gmin {
                        gmin = obj;
                        gmin_idx = Some(t);
                    }
                }
            }
        }
        violation = if gmax_idx.is_some() && gmax2 > f64::NEG_INFINITY { gmax + gmax2 } else { 0.0 };
        let (Some(i), Some(j)) = (gmax_idx, gmin_idx) else { break };
        if violation < p.eps || iterations >= p.max_iter {
            if iterations >= p.max_iter {
                log::warn!("SMO stopped at the iteration cap with violation {violation:.3e}");
            }
            break;
        }
        iterations += 1;

        let (old_i, old_j) = (alpha[i], alpha[j]);
        let qij = q(i, j);
        if y[i] != y[j] {
            let curv = (qd[i] + qd[j] + 2.0 * qij).max(TAU);
            let delta = (-grad[i] - grad[j]) / curv;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let curv = (qd[i] + qd[j] - 2.0 * qij).max(TAU);
            let delta = (grad[i] - grad[j]) / curv;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = sum;
                }
                if alpha[i] < 0.0 {
                    alpha[i] = 0.0;
                    alpha[j] = sum;
                }
            }
        }
        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] += q(i, t) * di + q(j, t) * dj;
        }
        if p.trace_objective {
            objective.push(0.5 * alpha.iter().zip(&grad).map(|(a, g)| a * (g - 1.0)).sum::<f64>());
        }
    }

    // rho: mean of y∇ over free variables, else the midpoint of the bounds.
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut free, mut sum_free) = (0usize, 0.0);
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            free += 1;
            sum_free += yg;
        }
    }
    let rho = if free > 0 { sum_free / free as f64 } else { (ub + lb) / 2.0 };
    let support = (0..n).filter(|&t| alpha[t] > 0.0).map(|t| (t, alpha[t] * y[t])).collect();
    BinaryMachine { support, rho, alpha, iterations, violation, objective }
}

/// A trained classifier over classes `0..n_classes`: one machine per
/// pair of classes present in training, combined by voting.
#[derive(Clone, Debug)]
pub struct SvmModel {
    pub n_classes: usize,
    pub n_train: usize,
    /// (positive class, negative class) of each machine.
    pub pairs: Vec<(usize, usize)>,
    /// Support indices refer to rows of the full training Gram; `alpha`
    /// is indexed by the machine's own subset.
    pub machines: Vec<BinaryMachine>,
}

impl SvmModel {
    /// One decision value per machine.
    pub fn decision_values(&self, row: &[f64]) -> Result<Vec<f64>, MlError> {
        if row.len() != self.n_train {
            return Err(MlError::RowLength { expected: self.n_train, found: row.len() });
        }
        Ok(self.machines.iter().map(|m| m.decision(row)).collect())
    }

    /// Predicted class by majority vote; a decision of exactly 0 votes for
    /// the pair's lower class and vote ties go to the lowest class index.
    pub fn predict(&self, row: &[f64]) -> Result<usize, MlError> {
        let d = self.decision_values(row)?;
        let mut votes = vec![0usize; self.n_classes];
        for (&(a, b), &v) in self.pairs.iter().zip(&d) {
            votes[if v >= 0.0 { a } else { b }] += 1;
        }
        let mut best = 0;
        for c in 1..self.n_classes {
            if votes[c] > votes[best] {
                best = c;
            }
        }
        Ok(best)
    }
}

/// Trains on the training Gram block `gram` with class indices `labels`.
pub fn svm_train(
    gram: ArrayView2<f64>,
    labels: &[usize],
    n_classes: usize,
    params: &SvmParams,
) -> Result<SvmModel, MlError> {
    let n = labels.len();
    if gram.dim() != (n, n) {
        return Err(MlError::RowLength { expected: n, found: gram.nrows() });
    }
    if !(params.c >= 0.0 && params.c.is_finite()) || params.eps.is_nan() || params.eps <= 0.0 {
        return Err(MlError::InvalidParam(format!("C = {}, eps = {}", params.c, params.eps)));
    }
    if let Some(((p, q), _)) = gram.indexed_iter().find(|(_, v)| !v.is_finite()) {
        return Err(MlError::NonFinite(p, q));
    }
    if let Some(&bad) = labels.iter().find(|&&l| l >= n_classes) {
        return Err(MlError::InvalidParam(format!("class index {bad} with {n_classes} classes")));
    }
    let mut present: Vec<usize> = labels.to_vec();
    present.sort_unstable();
    present.dedup();
    if present.len() < 2 {
        return Err(MlError::TooFewClasses(present.len()));
    }
    let mut pairs = Vec::new();
    let mut machines = Vec::new();
    for (x, &a) in present.iter().enumerate() {
        for &b in &present[x + 1..] {
            let idx: Vec<usize> = (0..n).filter(|&t| labels[t] == a || labels[t] == b).collect();
            let sub = gram.select(Axis(0), &idx).select(Axis(1), &idx);
            let y: Vec<f64> = idx.iter().map(|&t| if labels[t] == a { 1.0 } else { -1.0 }).collect();
            let mut m = train_binary(&sub.view(), &y, params);
            for s in &mut m.support {
                s.0 = idx[s.0];
            }
            pairs.push((a, b));
            machines.push(m);
        }
    }
    Ok(SvmModel { n_classes, n_train: n, pairs, machines })
}
