//! Labeled, finite, simple, undirected graphs.
//!
//! A [`Graph`] is immutable once built. Vertices keep the order they were
//! given in; the edge list is stored with each pair ordered by vertex
//! position and sorted, so two equal graphs always serialize identically.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid vertex label `{0}` (labels are non-empty, without whitespace or `#`)")]
    InvalidLabel(String),
    #[error("`{0}` is not a vertex")]
    UnknownVertex(String),
    #[error("loop at `{0}`")]
    Loop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("size out of range: {0}")]
    SizeOutOfRange(String),
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph has no vertices")]
    NoVertices,
    #[error("label `{0}` collides with a label reserved by the Mycielski construction")]
    ReservedLabel(String),
}

pub(crate) fn check_label(label: &str) -> Result<(), GraphError> {
    if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(GraphError::InvalidLabel(label.to_string()));
    }
    Ok(())
}

#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BitSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from vertex labels and label pairs.
    ///
    /// Fails on a duplicate or malformed label, an edge endpoint that is not
    /// a vertex, a loop, or the same edge given twice (in either order).
    pub fn new<V, S, E, A, B>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let v = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            pairs.push((u, v));
        }
        Graph::from_indices(labels, index, pairs)
    }

    fn from_indices(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        pairs: Vec<(usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let n = labels.len();
        let mut adj = vec![BitSet::new(n); n];
        let mut edges = Vec::with_capacity(pairs.len());
        for (u, v) in pairs {
            if u == v {
                return Err(GraphError::Loop(labels[u].clone()));
            }
            if adj[u].contains(v) {
                return Err(GraphError::DuplicateEdge(
                    labels[u].clone(),
                    labels[v].clone(),
                ));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        Ok(Graph {
            labels,
            index,
            adj,
            edges,
        })
    }

    /// Builds from numeric positions; used by the generators, whose inputs
    /// are correct by construction.
    pub(crate) fn from_parts(labels: Vec<String>, pairs: Vec<(usize, usize)>) -> Graph {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Graph::from_indices(labels, index, pairs).expect("generator produced an invalid graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize, GraphError> {
        self.index_of(label)
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    /// Canonical edge list as vertex positions `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.labels[u].as_str(), self.labels[v].as_str()))
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(u), Some(v)) => self.adjacent(u, v),
            _ => false,
        }
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// The subgraph induced on `subset`, keeping this graph's vertex order.
    pub fn induced_subgraph<I, S>(&self, subset: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut keep = BitSet::new(self.vertex_count());
        for s in subset {
            keep.insert(self.require(s.as_ref())?);
        }
        Ok(self.induced_on(&keep))
    }

    pub(crate) fn induced_on(&self, keep: &BitSet) -> Graph {
        let kept: Vec<usize> = keep.iter().collect();
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let labels = kept.iter().map(|&v| self.labels[v].clone()).collect();
        let pairs = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        Graph::from_parts(labels, pairs)
    }

    /// Renames every vertex through `rename`; order and edges are kept.
    pub fn relabel<F>(&self, mut rename: F) -> Result<Graph, GraphError>
    where
        F: FnMut(&str) -> String,
    {
        let labels: Vec<String> = self.labels.iter().map(|l| rename(l)).collect();
        let pairs: Vec<(usize, usize)> = self.edges.clone();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        Graph::from_indices(labels, index, pairs)
    }

    /// True when the graph has three pairwise adjacent vertices.
    pub fn has_triangle(&self) -> bool {
        self.edges
            .iter()
            .any(|&(u, v)| !self.adj[u].intersection(&self.adj[v]).is_empty())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edge_labels().collect::<Vec<_>>())
            .finish()
    }
}
