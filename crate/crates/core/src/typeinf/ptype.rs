use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TypeError;
use crate::model::{EdgeLabel, EdgeSet, NodeLabel};

pub type NodeSet = BTreeSet<NodeLabel>;

/// A provenance h-type.
///
/// `Typed` holds the edge layers outermost first (τ_h, …, τ_1) followed by
/// the terminal node-label layer τ_0. `Empty` marks a node with no walk of
/// the requested length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PType {
    Empty,
    Typed { edge_layers: Vec<EdgeSet>, terminal: NodeSet },
}

/// One layer of a type, viewed uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer<'a> {
    Edges(EdgeSet),
    Nodes(&'a NodeSet),
}

impl PType {
    /// Builds a non-empty type; every layer must be non-empty.
    pub fn new(edge_layers: Vec<EdgeSet>, terminal: NodeSet) -> Result<Self, TypeError> {
        if terminal.is_empty() || edge_layers.iter().any(|l| l.is_empty()) {
            return Err(TypeError::EmptyLayer);
        }
        Ok(PType::Typed { edge_layers, terminal })
    }

    /// Parses layers given outermost first as label names, e.g.
    /// `[["der","gen"], ["use"], ["act","ent"]]`.
    pub fn from_names<S: AsRef<str>>(layers: &[Vec<S>]) -> Result<Self, TypeError> {
        let Some((last, edges)) = layers.split_last() else {
            return Err(TypeError::EmptyLayer);
        };
        let edge_layers = edges
            .iter()
            .map(|layer| layer.iter().map(|s| s.as_ref().parse::<EdgeLabel>()).collect::<Result<EdgeSet, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let terminal = last.iter().map(|s| NodeLabel::parse(s.as_ref())).collect::<Result<NodeSet, _>>()?;
        PType::new(edge_layers, terminal)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PType::Empty)
    }

    /// The depth h, or `None` for `Empty`.
    pub fn depth(&self) -> Option<usize> {
        match self {
            PType::Empty => None,
            PType::Typed { edge_layers, .. } => Some(edge_layers.len()),
        }
    }

    pub fn terminal(&self) -> Option<&NodeSet> {
        match self {
            PType::Empty => None,
            PType::Typed { terminal, .. } => Some(terminal),
        }
    }

    /// τ_i, with i counted from the terminal layer (τ_0) outwards.
    pub fn tau(&self, i: usize) -> Option<Layer<'_>> {
        match self {
            PType::Empty => None,
            PType::Typed { edge_layers, terminal } => {
                let h = edge_layers.len();
                if i == 0 {
                    Some(Layer::Nodes(terminal))
                } else if i <= h {
                    Some(Layer::Edges(edge_layers[h - i]))
                } else {
                    None
                }
            }
        }
    }

    /// Label names layer by layer, outermost first. `None` for `Empty`.
    pub fn layer_names(&self) -> Option<Vec<Vec<&str>>> {
        match self {
            PType::Empty => None,
            PType::Typed { edge_layers, terminal } => {
                let mut out: Vec<Vec<&str>> =
                    edge_layers.iter().map(|l| l.iter().map(EdgeLabel::as_str).collect()).collect();
                out.push(terminal.iter().map(NodeLabel::as_str).collect());
                Some(out)
            }
        }
    }

    /// Canonical serialization: the JSON array of sorted layers, or `null`.
    /// Universes are ordered by this string.
    pub fn canonical_key(&self) -> String {
        serde_json::to_string(&self.layer_names()).expect("layer names serialize")
    }
}

impl fmt::Display for PType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.layer_names() {
            None => f.write_str("∅"),
            Some(layers) => {
                f.write_str("(")?;
                for (i, layer) in layers.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{{{}}}", layer.join(","))?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for PType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.layer_names().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Option::<Vec<Vec<String>>>::deserialize(d)? {
            None => Ok(PType::Empty),
            Some(layers) => PType::from_names(&layers).map_err(serde::de::Error::custom),
        }
    }
}

/// True iff `deep` extends `shallow`: τ_i agree for every i up to the
/// shallow depth.
pub fn is_extension(deep: &PType, shallow: &PType) -> Result<bool, TypeError> {
    let (Some(hd), Some(hs)) = (deep.depth(), shallow.depth()) else {
        return Err(TypeError::EmptyType);
    };
    if hd <= hs {
        return Err(TypeError::DepthOrder { deep: hd, shallow: hs });
    }
    Ok((0..=hs).all(|i| deep.tau(i) == shallow.tau(i)))
}
