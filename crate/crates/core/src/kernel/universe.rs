use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::KernelError;
use crate::model::LabelMode;
use crate::typeinf::{PType, TypeAssignment};

/// The distinct non-empty types of each depth, sorted by canonical key.
#[derive(Clone, Debug)]
pub struct TypeUniverse {
    mode: LabelMode,
    depths: Vec<Vec<PType>>,
    index: Vec<HashMap<PType, u32>>,
}

impl TypeUniverse {
    /// Builds a universe from arbitrary per-depth type lists; duplicates and
    /// `Empty` are dropped and each depth is put in canonical order.
    pub fn from_types(mode: LabelMode, depths: Vec<Vec<PType>>) -> Self {
        let depths: Vec<Vec<PType>> = depths
            .into_iter()
            .map(|types| {
                let mut keyed: Vec<(String, PType)> =
                    types.into_iter().filter(|t| !t.is_empty()).map(|t| (t.canonical_key(), t)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                keyed.dedup_by(|a, b| a.0 == b.0);
                keyed.into_iter().map(|(_, t)| t).collect()
            })
            .collect();
        let index = depths
            .iter()
            .map(|types| types.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect())
            .collect();
        TypeUniverse { mode, depths, index }
    }

    /// Largest depth covered.
    pub fn h(&self) -> usize {
        self.depths.len().saturating_sub(1)
    }

    pub fn mode(&self) -> LabelMode {
        self.mode
    }

    pub fn len(&self, depth: usize) -> usize {
        self.depths.get(depth).map_or(0, Vec::len)
    }

    /// Total number of features across depths.
    pub fn total_len(&self) -> usize {
        self.depths.iter().map(Vec::len).sum()
    }

    pub fn types(&self, depth: usize) -> &[PType] {
        &self.depths[depth]
    }

    pub fn get(&self, depth: usize, index: usize) -> Option<&PType> {
        self.depths.get(depth)?.get(index)
    }

    /// Position of a type within its depth.
    pub fn index_of(&self, t: &PType) -> Option<usize> {
        let d = t.depth()?;
        self.index.get(d)?.get(t).map(|&i| i as usize)
    }

    pub fn name(&self, depth: usize, index: usize) -> String {
        feature_name(depth, index, self.mode)
    }

    /// The type a feature name refers to.
    pub fn lookup(&self, name: &str) -> Result<&PType, KernelError> {
        let f: FeatureName = name.parse()?;
        if f.mode != self.mode {
            return Err(KernelError::FeatureMode {
                name: name.to_string(),
                found: f.mode.as_str(),
                expected: self.mode.as_str(),
            });
        }
        self.get(f.depth, f.index).ok_or_else(|| KernelError::UnknownFeature(name.to_string()))
    }

    /// Every feature as (name, depth, type), depth-major.
    pub fn features(&self) -> impl Iterator<Item = (String, usize, &PType)> + '_ {
        self.depths
            .iter()
            .enumerate()
            .flat_map(move |(d, types)| types.iter().enumerate().map(move |(i, t)| (self.name(d, i), d, t)))
    }

    /// For each index of `old`, its index in `self` (if still present).
    /// Indices are recomputed from scratch on every build, so a grown family
    /// may shift positions; this map carries old feature columns over.
    pub fn remap_from(&self, old: &TypeUniverse) -> Vec<Vec<Option<usize>>> {
        old.depths.iter().map(|types| types.iter().map(|t| self.index_of(t)).collect()).collect()
    }
}

/// Collects the universe of an assignment at depths `0..=h_max`.
pub fn build_universe(assignment: &TypeAssignment) -> TypeUniverse {
    let depths = (0..=assignment.h_max()).map(|d| assignment.table(d).to_vec()).collect();
    TypeUniverse::from_types(assignment.mode(), depths)
}

/// `FA{depth}_{index}` in application mode, `FG{depth}_{index}` in generic.
pub fn feature_name(depth: usize, index: usize, mode: LabelMode) -> String {
    FeatureName { mode, depth, index }.to_string()
}

/// A parsed feature name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeatureName {
    pub mode: LabelMode,
    pub depth: usize,
    pub index: usize,
}

impl fmt::Display for FeatureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.mode {
            LabelMode::Application => "FA",
            LabelMode::Generic => "FG",
        };
        write!(f, "{tag}{}_{}", self.depth, self.index)
    }
}

impl FromStr for FeatureName {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KernelError::UnknownFeature(s.to_string());
        let mode = match s.get(..2) {
            Some("FA") => LabelMode::Application,
            Some("FG") => LabelMode::Generic,
            _ => return Err(bad()),
        };
        let (d, i) = s[2..].split_once('_').ok_or_else(bad)?;
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        if !digits(d) || !digits(i) {
            return Err(bad());
        }
        Ok(FeatureName { mode, depth: d.parse().map_err(|_| bad())?, index: i.parse().map_err(|_| bad())? })
    }
}
