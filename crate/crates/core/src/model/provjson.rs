//! W3C PROV-JSON ingestion.
//!
//! Only the twelve relations that carry an edge label are mapped. Bundles and
//! other PROV constructs are skipped with a counted warning; relation
//! attributes beyond the two endpoints are ignored.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{Map, Value};

use super::graph::{GraphBuilder, ProvGraph};
use super::labels::{EdgeLabel, GenericKind, LabelMode, NodeLabel};
use super::ModelError;

/// A parsed document and everything that was skipped on the way.
#[derive(Clone, Debug)]
pub struct ProvJsonImport {
    pub graph: ProvGraph,
    pub warnings: Vec<String>,
}

/// Endpoint attribute names of each relation, as (source, destination).
fn endpoint_keys(label: EdgeLabel) -> (&'static str, &'static str) {
    match label {
        EdgeLabel::Der => ("prov:generatedEntity", "prov:usedEntity"),
        EdgeLabel::Spe => ("prov:specificEntity", "prov:generalEntity"),
        EdgeLabel::Alt => ("prov:alternate1", "prov:alternate2"),
        EdgeLabel::Wib => ("prov:entity", "prov:activity"),
        EdgeLabel::Gen => ("prov:entity", "prov:activity"),
        EdgeLabel::Use => ("prov:activity", "prov:entity"),
        EdgeLabel::Wat => ("prov:entity", "prov:agent"),
        EdgeLabel::Waw => ("prov:activity", "prov:agent"),
        EdgeLabel::Abo => ("prov:delegate", "prov:responsible"),
        EdgeLabel::Wsb => ("prov:activity", "prov:trigger"),
        EdgeLabel::Web => ("prov:activity", "prov:trigger"),
        EdgeLabel::Wifb => ("prov:informed", "prov:informant"),
    }
}

fn element_kind(key: &str) -> Option<GenericKind> {
    match key {
        "entity" => Some(GenericKind::Entity),
        "activity" => Some(GenericKind::Activity),
        "agent" => Some(GenericKind::Agent),
        _ => None,
    }
}

/// A record value is either one attribute object or an array of them
/// (the same identifier used more than once).
fn records(value: &Value) -> Vec<&Map<String, Value>> {
    match value {
        Value::Object(m) => vec![m],
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        _ => Vec::new(),
    }
}

fn qualified_names(value: &Value, out: &mut Vec<String>) {
    match value {
        Value::String(s) => out.push(s.clone()),
        Value::Object(m) => {
            if let Some(Value::String(s)) = m.get("$") {
                out.push(s.clone());
            }
        }
        Value::Array(items) => items.iter().for_each(|v| qualified_names(v, out)),
        _ => {}
    }
}

fn reference(value: Option<&Value>) -> Option<String> {
    let mut names = Vec::new();
    qualified_names(value?, &mut names);
    names.into_iter().next()
}

/// Parses one PROV-JSON document into a graph with id `graph_id`.
pub fn parse_provjson(graph_id: &str, text: &str, mode: LabelMode) -> Result<ProvJsonImport, ModelError> {
    let err = |message: String| ModelError::ProvJson { path: graph_id.to_string(), message };
    let doc: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let doc = doc.as_object().ok_or_else(|| err("top-level value is not an object".into()))?;

    let mut warnings = Vec::new();
    let mut b = GraphBuilder::new(graph_id);

    // Elements first so that relation endpoints resolve.
    for (key, value) in doc {
        let Some(kind) = element_kind(key) else { continue };
        let map = value.as_object().ok_or_else(|| err(format!("`{key}` is not an object")))?;
        for (id, record) in map {
            let mut labels = vec![NodeLabel::Generic(kind)];
            if mode == LabelMode::Application {
                for attrs in records(record) {
                    let mut names = Vec::new();
                    if let Some(t) = attrs.get("prov:type") {
                        qualified_names(t, &mut names);
                    }
                    for name in names {
                        match NodeLabel::app(&name) {
                            Ok(l) => labels.push(l),
                            Err(_) => warnings.push(format!("{id}: ignoring prov:type `{name}`")),
                        }
                    }
                }
            }
            b.node(id.clone(), labels);
        }
    }

    let mut skipped: BTreeMap<String, usize> = BTreeMap::new();
    let mut extras = 0usize;
    for (key, value) in doc {
        if element_kind(key).is_some() || key == "prefix" {
            continue;
        }
        let Some(label) = EdgeLabel::from_relation(key) else {
            *skipped.entry(key.clone()).or_insert(0) += 1;
            continue;
        };
        let map = value.as_object().ok_or_else(|| err(format!("`{key}` is not an object")))?;
        let (src_key, dst_key) = endpoint_keys(label);
        let (src_kind, dst_kind) = label.endpoint_kinds();
        for (rel_id, record) in map {
            for attrs in records(record) {
                extras += attrs.keys().filter(|k| *k != src_key && *k != dst_key).count();
                let (Some(src), Some(dst)) = (reference(attrs.get(src_key)), reference(attrs.get(dst_key))) else {
                    warnings.push(format!("{key} {rel_id}: missing {src_key} or {dst_key}, relation skipped"));
                    continue;
                };
                for (node, kind) in [(&src, src_kind), (&dst, dst_kind)] {
                    if !b.has_node(node) {
                        warnings.push(format!("{key} {rel_id}: undeclared node `{node}` declared as {kind}"));
                        b.node(node.clone(), [NodeLabel::Generic(kind)]);
                    }
                }
                b.edge(src, dst, label);
            }
        }
    }
    for (key, count) in skipped {
        warnings.push(format!("skipped {count} unsupported `{key}` construct(s)"));
    }
    if extras > 0 {
        warnings.push(format!("ignored {extras} relation attribute(s) beyond the endpoints"));
    }
    for w in &warnings {
        log::warn!("{graph_id}: {w}");
    }
    Ok(ProvJsonImport { graph: b.build()?, warnings })
}

/// Reads a PROV-JSON file. The graph id is the file stem.
pub fn load_provjson(path: &Path, mode: LabelMode) -> Result<ProvJsonImport, ModelError> {
    let text = std::fs::read_to_string(path).map_err(|e| ModelError::io(path, e))?;
    let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    parse_provjson(id, &text, mode).map_err(|e| match e {
        ModelError::ProvJson { message, .. } => ModelError::ProvJson { path: path.display().to_string(), message },
        other => other,
    })
}
