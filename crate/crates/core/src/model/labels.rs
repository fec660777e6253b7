use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;

/// The three PROV generic node kinds.
///
/// Variants are declared in the lexicographic order of their short names so
/// that the derived `Ord` agrees with string order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenericKind {
    Activity,
    Agent,
    Entity,
}

impl GenericKind {
    pub const ALL: [GenericKind; 3] = [GenericKind::Activity, GenericKind::Agent, GenericKind::Entity];

    pub fn as_str(self) -> &'static str {
        match self {
            GenericKind::Activity => "act",
            GenericKind::Agent => "ag",
            GenericKind::Entity => "ent",
        }
    }

    pub fn from_short(s: &str) -> Option<Self> {
        match s {
            "act" => Some(GenericKind::Activity),
            "ag" => Some(GenericKind::Agent),
            "ent" => Some(GenericKind::Entity),
            _ => None,
        }
    }
}

impl fmt::Display for GenericKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A PROV edge label. Variants are in lexicographic order of their
/// short names, which is also the bit order used by [`EdgeSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Abo,
    Alt,
    Der,
    Gen,
    Spe,
    Use,
    Wat,
    Waw,
    Web,
    Wib,
    Wifb,
    Wsb,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 12] = [
        EdgeLabel::Abo,
        EdgeLabel::Alt,
        EdgeLabel::Der,
        EdgeLabel::Gen,
        EdgeLabel::Spe,
        EdgeLabel::Use,
        EdgeLabel::Wat,
        EdgeLabel::Waw,
        EdgeLabel::Web,
        EdgeLabel::Wib,
        EdgeLabel::Wifb,
        EdgeLabel::Wsb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::Abo => "abo",
            EdgeLabel::Alt => "alt",
            EdgeLabel::Der => "der",
            EdgeLabel::Gen => "gen",
            EdgeLabel::Spe => "spe",
            EdgeLabel::Use => "use",
            EdgeLabel::Wat => "wat",
            EdgeLabel::Waw => "waw",
            EdgeLabel::Web => "web",
            EdgeLabel::Wib => "wib",
            EdgeLabel::Wifb => "wifb",
            EdgeLabel::Wsb => "wsb",
        }
    }

    /// The PROV-JSON relation name this label is read from.
    pub fn relation(self) -> &'static str {
        match self {
            EdgeLabel::Abo => "actedOnBehalfOf",
            EdgeLabel::Alt => "alternateOf",
            EdgeLabel::Der => "wasDerivedFrom",
            EdgeLabel::Gen => "wasGeneratedBy",
            EdgeLabel::Spe => "specializationOf",
            EdgeLabel::Use => "used",
            EdgeLabel::Wat => "wasAttributedTo",
            EdgeLabel::Waw => "wasAssociatedWith",
            EdgeLabel::Web => "wasEndedBy",
            EdgeLabel::Wib => "wasInvalidatedBy",
            EdgeLabel::Wifb => "wasInformedBy",
            EdgeLabel::Wsb => "wasStartedBy",
        }
    }

    pub fn from_relation(name: &str) -> Option<Self> {
        EdgeLabel::ALL.into_iter().find(|l| l.relation() == name)
    }

    /// Generic kinds of the (source, destination) nodes of this relation.
    pub fn endpoint_kinds(self) -> (GenericKind, GenericKind) {
        use GenericKind::*;
        match self {
            EdgeLabel::Der | EdgeLabel::Spe | EdgeLabel::Alt => (Entity, Entity),
            EdgeLabel::Wib | EdgeLabel::Gen => (Entity, Activity),
            EdgeLabel::Use | EdgeLabel::Wsb | EdgeLabel::Web => (Activity, Entity),
            EdgeLabel::Wat => (Entity, Agent),
            EdgeLabel::Waw => (Activity, Agent),
            EdgeLabel::Abo => (Agent, Agent),
            EdgeLabel::Wifb => (Activity, Activity),
        }
    }

    pub(crate) fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeLabel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EdgeLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| ModelError::UnknownEdgeLabel(s.to_string()))
    }
}

impl Serialize for EdgeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for EdgeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of edge labels packed into a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(u16);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub(crate) fn from_bits(bits: u16) -> Self {
        EdgeSet(bits)
    }

    pub fn insert(&mut self, label: EdgeLabel) {
        self.0 |= label.bit();
    }

    pub fn contains(self, label: EdgeLabel) -> bool {
        self.0 & label.bit() != 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Labels in lexicographic order.
    pub fn iter(self) -> impl Iterator<Item = EdgeLabel> {
        EdgeLabel::ALL.into_iter().filter(move |l| self.contains(*l))
    }
}

impl FromIterator<EdgeLabel> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeLabel>>(iter: I) -> Self {
        let mut set = EdgeSet::EMPTY;
        for l in iter {
            set.insert(l);
        }
        set
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(l.as_str())?;
        }
        f.write_str("}")
    }
}

/// A node label: one of the generic PROV kinds or an opaque application
/// label such as `mimic:Patient`.
///
/// Labels order and compare by their string form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeLabel {
    Generic(GenericKind),
    App(Arc<str>),
}

impl NodeLabel {
    pub const ENTITY: NodeLabel = NodeLabel::Generic(GenericKind::Entity);
    pub const ACTIVITY: NodeLabel = NodeLabel::Generic(GenericKind::Activity);
    pub const AGENT: NodeLabel = NodeLabel::Generic(GenericKind::Agent);

    /// Builds an application label, rejecting empty strings and the
    /// reserved generic names.
    pub fn app(name: &str) -> Result<Self, ModelError> {
        if name.is_empty() || GenericKind::from_short(name).is_some() {
            return Err(ModelError::InvalidAppLabel(name.to_string()));
        }
        Ok(NodeLabel::App(Arc::from(name)))
    }

    /// Parses the serialized form: a generic short name or an app label.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        match GenericKind::from_short(s) {
            Some(kind) => Ok(NodeLabel::Generic(kind)),
            None => NodeLabel::app(s),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            NodeLabel::Generic(k) => k.as_str(),
            NodeLabel::App(s) => s,
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, NodeLabel::Generic(_))
    }

    pub fn generic_kind(&self) -> Option<GenericKind> {
        match self {
            NodeLabel::Generic(k) => Some(*k),
            NodeLabel::App(_) => None,
        }
    }
}

impl Ord for NodeLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl PartialOrd for NodeLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<GenericKind> for NodeLabel {
    fn from(k: GenericKind) -> Self {
        NodeLabel::Generic(k)
    }
}

impl Serialize for NodeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for NodeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        NodeLabel::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Which node labels take part in type inference and kernels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    /// Only `ent`, `act`, `ag`; application labels are stripped.
    #[default]
    Generic,
    /// Generic labels plus application labels.
    Application,
}

impl LabelMode {
    pub fn keeps(self, label: &NodeLabel) -> bool {
        match self {
            LabelMode::Generic => label.is_generic(),
            LabelMode::Application => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LabelMode::Generic => "generic",
            LabelMode::Application => "application",
        }
    }
}

impl FromStr for LabelMode {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "generic" | "g" | "G" => Ok(LabelMode::Generic),
            "application" | "app" | "a" | "A" => Ok(LabelMode::Application),
            _ => Err(ModelError::UnknownLabelMode(s.to_string())),
        }
    }
}
