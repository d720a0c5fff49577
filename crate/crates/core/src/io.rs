//! Text, JSON and DOT formats for graphs and orientations.
//!
//! Edge-list text:
//!
//! ```text
//! # comment
//! vertices: 1 2 3
//! 1 2
//! 2 3
//! ```
//!
//! JSON: `{"vertices": ["1", "2", "3"], "edges": [["1", "2"], ["2", "3"]]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::orientation::Orientation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `vertices:` header")]
    MissingHeader,
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses the edge-list text format.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut vertices: Option<Vec<&str>> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        match &vertices {
            None => {
                let rest = line
                    .strip_prefix("vertices:")
                    .ok_or(FormatError::MissingHeader)?;
                vertices = Some(rest.split_whitespace().collect());
            }
            Some(_) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [u, v] = parts[..] else {
                    return Err(FormatError::Syntax {
                        line: i + 1,
                        msg: format!("expected `u v`, got `{line}`"),
                    });
                };
                edges.push((u, v));
            }
        }
    }
    let vertices = vertices.ok_or(FormatError::MissingHeader)?;
    Ok(Graph::new(vertices, edges)?)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("vertices: {}\n", g.labels().join(" "));
    for (u, v) in g.edge_labels() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

pub fn to_json(g: &Graph) -> String {
    let j = JsonGraph {
        vertices: g.labels().to_vec(),
        edges: g
            .edge_labels()
            .map(|(u, v)| [u.to_string(), v.to_string()])
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("graph serializes")
}

pub fn parse_json(text: &str) -> Result<Graph, FormatError> {
    let j: JsonGraph = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    Ok(Graph::new(
        j.vertices,
        j.edges.into_iter().map(|[u, v]| (u, v)),
    )?)
}

/// JSON if the text starts with `{`, otherwise the edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph {} {{\n", quote(name));
    for l in g.labels() {
        let _ = writeln!(s, "  {};", quote(l));
    }
    for (u, v) in g.edge_labels() {
        let _ = writeln!(s, "  {} -- {};", quote(u), quote(v));
    }
    s.push_str("}\n");
    s
}

pub fn orientation_to_dot(d: &Orientation, name: &str) -> String {
    let mut s = format!("digraph {} {{\n", quote(name));
    for l in d.base().labels() {
        let _ = writeln!(s, "  {};", quote(l));
    }
    for (u, v) in d.arc_labels() {
        let _ = writeln!(s, "  {} -> {};", quote(u), quote(v));
    }
    s.push_str("}\n");
    s
}
