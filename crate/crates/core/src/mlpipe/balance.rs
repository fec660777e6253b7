use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::MlError;
use crate::model::Dataset;

/// Indices of a class-balanced subsample: every class is randomly reduced
/// to the size of the smallest one. Returned in ascending order.
pub fn balance_indices(labels: &[String], seed: u64) -> Result<Vec<usize>, MlError> {
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        groups.entry(l.as_str()).or_default().push(i);
    }
    if groups.len() < 2 {
        return Err(MlError::TooFewClasses(groups.len()));
    }
    let keep = groups.values().map(Vec::len).min().expect("non-empty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(keep * groups.len());
    for members in groups.values_mut() {
        if members.len() > keep {
            members.shuffle(&mut rng);
            members.truncate(keep);
        }
        out.extend_from_slice(members);
    }
    out.sort_unstable();
    Ok(out)
}

/// Random undersampling of the majority classes.
pub fn balance_undersample(ds: &Dataset, seed: u64) -> Result<Dataset, MlError> {
    let idx = balance_indices(ds.labels(), seed)?;
    Ok(ds.subset(&idx)?)
}
