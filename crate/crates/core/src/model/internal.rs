//! Line-delimited dataset format and dataset manifests.
//!
//! One JSON object per line:
//! `{"id":…,"label":…,"nodes":[{"id":…,"labels":[…]}],"edges":[[src,dst,"gen"],…]}`.
//! Nodes are written sorted by id and labels sorted, so output is
//! byte-stable for a given dataset.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::graph::{Dataset, GraphBuilder, ProvGraph};
use super::labels::{EdgeLabel, LabelMode, NodeLabel};
use super::provjson::load_provjson;
use super::ModelError;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const GRAPHS_FILE: &str = "graphs.jsonl";
const MANIFEST_FORMAT: &str = "provkernel-dataset/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeRecord {
    id: String,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRecord {
    id: String,
    label: String,
    nodes: Vec<NodeRecord>,
    edges: Vec<(String, String, EdgeLabel)>,
}

impl GraphRecord {
    fn from_graph(g: &ProvGraph, label: &str) -> Self {
        let nodes = g
            .nodes()
            .iter()
            .map(|n| NodeRecord { id: n.id.clone(), labels: n.labels.iter().map(|l| l.as_str().to_string()).collect() })
            .collect();
        let ids = g.nodes();
        let edges = g.edges().iter().map(|e| (ids[e.src].id.clone(), ids[e.dst].id.clone(), e.label)).collect();
        GraphRecord { id: g.id().to_string(), label: label.to_string(), nodes, edges }
    }

    fn into_graph(self) -> Result<(ProvGraph, String), ModelError> {
        let mut b = GraphBuilder::new(self.id);
        for n in self.nodes {
            let labels = n.labels.iter().map(|l| NodeLabel::parse(l)).collect::<Result<Vec<_>, _>>()?;
            b.node(n.id, labels);
        }
        for (s, d, l) in self.edges {
            b.edge(s, d, l);
        }
        Ok((b.build()?, self.label))
    }
}

/// Writes a dataset in the line-delimited format.
pub fn save_internal(ds: &Dataset, path: &Path) -> Result<(), ModelError> {
    let file = File::create(path).map_err(|e| ModelError::io(path, e))?;
    let mut w = BufWriter::new(file);
    for (g, label) in ds.graphs().iter().zip(ds.labels()) {
        let line = serde_json::to_string(&GraphRecord::from_graph(g, label)).expect("records serialize");
        writeln!(w, "{line}").map_err(|e| ModelError::io(path, e))?;
    }
    w.flush().map_err(|e| ModelError::io(path, e))
}

/// Reads a line-delimited dataset. Blank lines are skipped.
pub fn load_internal(path: &Path) -> Result<Dataset, ModelError> {
    let file = File::open(path).map_err(|e| ModelError::io(path, e))?;
    let mut graphs = Vec::new();
    let mut labels = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| ModelError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| ModelError::Malformed { path: path.display().to_string(), line: i + 1, message };
        let record: GraphRecord = serde_json::from_str(&line).map_err(|e| malformed(e.to_string()))?;
        let (g, label) = record.into_graph().map_err(|e| malformed(e.to_string()))?;
        if !seen.insert(g.id().to_string()) {
            return Err(malformed(format!("duplicate graph id `{}`", g.id())));
        }
        graphs.push(g);
        labels.push(label);
    }
    Dataset::new(graphs, labels)
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FileFormat {
    Jsonl,
    Provjson,
}

#[derive(Serialize, Deserialize)]
struct ManifestEntry {
    path: String,
    format: FileFormat,
    /// Class label for a PROV-JSON entry; jsonl files carry their own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    /// Graph id override for a PROV-JSON entry (default: file stem).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    format: String,
    #[serde(default)]
    graph_count: Option<usize>,
    #[serde(default)]
    class_counts: BTreeMap<String, usize>,
    files: Vec<ManifestEntry>,
    #[serde(default)]
    generation: serde_json::Value,
}

/// Writes `graphs.jsonl` plus a manifest into `dir` (created if needed).
pub fn save_dataset_dir(ds: &Dataset, dir: &Path) -> Result<(), ModelError> {
    std::fs::create_dir_all(dir).map_err(|e| ModelError::io(dir, e))?;
    save_internal(ds, &dir.join(GRAPHS_FILE))?;
    let manifest = Manifest {
        format: MANIFEST_FORMAT.to_string(),
        graph_count: Some(ds.len()),
        class_counts: ds.class_counts(),
        files: vec![ManifestEntry { path: GRAPHS_FILE.into(), format: FileFormat::Jsonl, label: None, id: None }],
        generation: ds.meta.clone(),
    };
    let path = dir.join(MANIFEST_FILE);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&path, text + "\n").map_err(|e| ModelError::io(&path, e))
}

/// Loads a dataset described by a manifest file.
pub fn load_manifest_dir(manifest_path: &Path) -> Result<Dataset, ModelError> {
    let text = std::fs::read_to_string(manifest_path).map_err(|e| ModelError::io(manifest_path, e))?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| ModelError::Malformed {
        path: manifest_path.display().to_string(),
        line: e.line(),
        message: e.to_string(),
    })?;
    let base = manifest_path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut ds = Dataset::empty();
    for entry in &manifest.files {
        let path = base.join(&entry.path);
        let part = match entry.format {
            FileFormat::Jsonl => load_internal(&path)?,
            FileFormat::Provjson => {
                let imp = load_provjson(&path, LabelMode::Application)?;
                let g = match &entry.id {
                    Some(id) => imp.graph.with_id(id.clone()),
                    None => imp.graph,
                };
                let label = entry.label.clone().unwrap_or_else(|| "unlabeled".to_string());
                Dataset::new(vec![g], vec![label])?
            }
        };
        ds = ds.concat(part)?;
    }
    if let Some(expected) = manifest.graph_count {
        if expected != ds.len() {
            return Err(ModelError::Malformed {
                path: manifest_path.display().to_string(),
                line: 0,
                message: format!("manifest declares {expected} graphs, found {}", ds.len()),
            });
        }
    }
    Ok(ds.with_meta(manifest.generation))
}

/// Loads a dataset from a directory with a manifest, a manifest file, a
/// `.jsonl` file, or a single PROV-JSON document (labelled `unlabeled`).
pub fn load_dataset(path: &Path) -> Result<Dataset, ModelError> {
    if path.is_dir() {
        return load_manifest_dir(&path.join(MANIFEST_FILE));
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("jsonl") => load_internal(path),
        _ if path.file_name().is_some_and(|n| n == MANIFEST_FILE) => load_manifest_dir(path),
        _ => {
            let imp = load_provjson(path, LabelMode::Application)?;
            Dataset::new(vec![imp.graph], vec!["unlabeled".to_string()])
        }
    }
}

/// Resolves the graphs file of a dataset directory.
pub fn graphs_path(dir: &Path) -> PathBuf {
    dir.join(GRAPHS_FILE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Dataset {
        let mut b = ProvGraph::builder("g1");
        b.node("e", [NodeLabel::ENTITY, NodeLabel::app("x:Doc").unwrap()])
            .node("a", [NodeLabel::ACTIVITY])
            .edge("e", "a", EdgeLabel::Gen)
            .edge("e", "a", EdgeLabel::Gen);
        Dataset::new(vec![b.build().unwrap()], vec!["yes".into()]).unwrap()
    }

    #[test]
    fn empty_dataset_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.jsonl");
        save_internal(&Dataset::empty(), &p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "");
        assert!(load_internal(&p).unwrap().is_empty());
    }

    #[test]
    fn single_graph_round_trips_bit_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("one.jsonl");
        let ds = sample();
        save_internal(&ds, &p).unwrap();
        let first = std::fs::read(&p).unwrap();
        let back = load_internal(&p).unwrap();
        assert_eq!(back.graphs(), ds.graphs());
        assert_eq!(back.labels(), ds.labels());
        save_internal(&back, &p).unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), first);
        assert_eq!(
            String::from_utf8(first).unwrap().trim_end(),
            r#"{"id":"g1","label":"yes","nodes":[{"id":"a","labels":["act"]},{"id":"e","labels":["ent","x:Doc"]}],"edges":[["e","a","gen"],["e","a","gen"]]}"#
        );
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.jsonl");
        std::fs::write(&p, "{\"id\":\"a\",\"label\":\"x\",\"nodes\":[],\"edges\":[]}\n{oops}\n").unwrap();
        match load_internal(&p) {
            Err(ModelError::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_graph_id_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("dup.jsonl");
        let line = "{\"id\":\"a\",\"label\":\"x\",\"nodes\":[],\"edges\":[]}\n";
        std::fs::write(&p, format!("{line}{line}")).unwrap();
        assert!(matches!(load_internal(&p), Err(ModelError::Malformed { line: 2, .. })));
    }

    #[test]
    fn manifest_dir_round_trips_and_mixes_provjson() {
        let dir = tempfile::tempdir().unwrap();
        let ds = sample().with_meta(serde_json::json!({"seed": 7}));
        save_dataset_dir(&ds, dir.path()).unwrap();
        let back = load_dataset(dir.path()).unwrap();
        assert_eq!(back.graphs(), ds.graphs());
        assert_eq!(back.meta["seed"], 7);

        std::fs::write(dir.path().join("doc.json"), r#"{"entity": {"e1": {}}}"#).unwrap();
        let manifest = serde_json::json!({
            "format": MANIFEST_FORMAT,
            "files": [
                {"path": "graphs.jsonl", "format": "jsonl"},
                {"path": "doc.json", "format": "provjson", "label": "trusted"}
            ]
        });
        std::fs::write(dir.path().join(MANIFEST_FILE), manifest.to_string()).unwrap();
        let mixed = load_dataset(dir.path()).unwrap();
        assert_eq!(mixed.len(), 2);
        assert_eq!(mixed.label_of("doc"), Some("trusted"));
    }
}
