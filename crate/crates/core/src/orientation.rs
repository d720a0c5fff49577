//! Total and partial orientations of a [`Graph`].

use std::fmt;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("{0} -> {1} is not an edge of the base graph")]
    NotAnEdge(String, String),
    #[error("edge {0}-{1} is given a direction twice")]
    DirectedTwice(String, String),
    #[error("edge {0}-{1} has no direction")]
    Undirected(String, String),
    #[error("orientation contains a directed cycle")]
    Cyclic,
    #[error("{what} limited to {limit} (got {actual}); set the guard override to lift this")]
    ScaleGuard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("malformed arc line `{0}` (expected `u -> v`)")]
    MalformedArc(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A direction for every edge of `base`.
#[derive(Clone, PartialEq, Eq)]
pub struct Orientation {
    base: Graph,
    /// `forward[e]` means edge `(u, v) = base.edges()[e]` points `u -> v`.
    forward: Vec<bool>,
}

impl Orientation {
    /// Orients every edge from `arcs`; each edge must appear exactly once.
    pub fn from_arcs<I, A, B>(base: Graph, arcs: I) -> Result<Orientation, OrientationError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut partial = PartialOrientation::new(base);
        for (a, b) in arcs {
            partial.fix(a.as_ref(), b.as_ref())?;
        }
        partial.into_total()
    }

    /// Orients `{u, v}` (positions, `u < v`) as `u -> v` iff `forward(u, v)`.
    pub fn from_fn<F>(base: Graph, mut forward: F) -> Orientation
    where
        F: FnMut(usize, usize) -> bool,
    {
        let forward = base.edges().iter().map(|&(u, v)| forward(u, v)).collect();
        Orientation { base, forward }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Arcs as `(tail, head)` positions, in canonical edge order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.base
            .edges()
            .iter()
            .zip(&self.forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
    }

    pub fn arc_labels(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.arcs()
            .map(|(u, v)| (self.base.label(u), self.base.label(v)))
    }

    pub fn arc_count(&self) -> usize {
        self.forward.len()
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        match self.base.edge_index(tail, head) {
            Some(e) => self.forward[e] == (tail < head),
            None => false,
        }
    }

    pub fn has_arc_labels(&self, tail: &str, head: &str) -> bool {
        match (self.base.index_of(tail), self.base.index_of(head)) {
            (Some(t), Some(h)) => self.has_arc(t, h),
            _ => false,
        }
    }

    pub fn out_sets(&self) -> Vec<BitSet> {
        let n = self.base.vertex_count();
        let mut out = vec![BitSet::new(n); n];
        for (u, v) in self.arcs() {
            out[u].insert(v);
        }
        out
    }

    /// Every arc flipped.
    pub fn reversed(&self) -> Orientation {
        Orientation {
            base: self.base.clone(),
            forward: self.forward.iter().map(|f| !f).collect(),
        }
    }

    /// Kahn's algorithm; `None` when there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        topological_order(&self.out_sets())
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Descendant sets (excluding the vertex itself), or `None` if cyclic.
    pub fn reachability(&self) -> Option<Vec<BitSet>> {
        let out = self.out_sets();
        let order = topological_order(&out)?;
        Some(closure(&out, &order))
    }

    /// The orientation of the induced subgraph on `subset`.
    pub fn restrict<I, S>(&self, subset: I) -> Result<Orientation, OrientationError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let sub = self.base.induced_subgraph(subset)?;
        let map: Vec<usize> = sub
            .labels()
            .iter()
            .map(|l| self.base.index_of(l).unwrap())
            .collect();
        Ok(Orientation::from_fn(sub, |u, v| {
            self.has_arc(map[u], map[v])
        }))
    }

    /// `u -> v` per line, canonical edge order.
    pub fn to_arc_lines(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.arc_labels() {
            s.push_str(u);
            s.push_str(" -> ");
            s.push_str(v);
            s.push('\n');
        }
        s
    }

    /// Parses `u -> v` lines (blank lines and `#` comments ignored).
    pub fn parse_arc_lines(base: Graph, text: &str) -> Result<Orientation, OrientationError> {
        let mut arcs = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once("->")
                .ok_or_else(|| OrientationError::MalformedArc(line.to_string()))?;
            let (a, b) = (a.trim(), b.trim());
            if a.is_empty() || b.is_empty() {
                return Err(OrientationError::MalformedArc(line.to_string()));
            }
            arcs.push((a.to_string(), b.to_string()));
        }
        Orientation::from_arcs(base, arcs)
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.arc_labels().map(|(u, v)| format!("{u}->{v}")))
            .finish()
    }
}

pub(crate) fn topological_order(out: &[BitSet]) -> Option<Vec<usize>> {
    let n = out.len();
    let mut indeg = vec![0usize; n];
    for s in out {
        for v in s.iter() {
            indeg[v] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = ready.pop() {
        order.push(u);
        for v in out[u].iter() {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Descendant sets from out-sets and a topological order.
pub(crate) fn closure(out: &[BitSet], order: &[usize]) -> Vec<BitSet> {
    let mut reach = out.to_vec();
    for &u in order.iter().rev() {
        let mut r = out[u].clone();
        for v in out[u].iter() {
            r.union_with(&reach[v]);
        }
        reach[u] = r;
    }
    reach
}

/// Some edges directed, the rest free.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialOrientation {
    base: Graph,
    dir: Vec<Option<bool>>,
}

impl PartialOrientation {
    /// Every edge free.
    pub fn new(base: Graph) -> PartialOrientation {
        let dir = vec![None; base.edge_count()];
        PartialOrientation { base, dir }
    }

    pub fn with_arcs<I, A, B>(base: Graph, arcs: I) -> Result<PartialOrientation, OrientationError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut p = PartialOrientation::new(base);
        for (a, b) in arcs {
            p.fix(a.as_ref(), b.as_ref())?;
        }
        Ok(p)
    }

    /// Directs the edge `{tail, head}` as `tail -> head`.
    pub fn fix(&mut self, tail: &str, head: &str) -> Result<(), OrientationError> {
        let t = self.base.require(tail)?;
        let h = self.base.require(head)?;
        let e = self
            .base
            .edge_index(t, h)
            .ok_or_else(|| OrientationError::NotAnEdge(tail.into(), head.into()))?;
        if self.dir[e].is_some() {
            return Err(OrientationError::DirectedTwice(tail.into(), head.into()));
        }
        self.dir[e] = Some(t < h);
        Ok(())
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Per canonical edge: `Some(true)` for `u -> v`, `Some(false)` for
    /// `v -> u`, `None` when free.
    pub fn directions(&self) -> &[Option<bool>] {
        &self.dir
    }

    pub fn free_count(&self) -> usize {
        self.dir.iter().filter(|d| d.is_none()).count()
    }

    pub fn directed_count(&self) -> usize {
        self.dir.len() - self.free_count()
    }

    pub fn into_total(self) -> Result<Orientation, OrientationError> {
        if let Some(e) = self.dir.iter().position(Option::is_none) {
            let (u, v) = self.base.edges()[e];
            return Err(OrientationError::Undirected(
                self.base.label(u).into(),
                self.base.label(v).into(),
            ));
        }
        let forward = self.dir.iter().map(|d| d.unwrap()).collect();
        Ok(Orientation {
            base: self.base,
            forward,
        })
    }

    /// Whether `total` agrees with every directed edge here.
    pub fn is_extended_by(&self, total: &Orientation) -> bool {
        total.base == self.base
            && self
                .dir
                .iter()
                .zip(&total.forward)
                .all(|(d, f)| d.is_none_or(|d| d == *f))
    }
}

impl From<Orientation> for PartialOrientation {
    fn from(o: Orientation) -> Self {
        PartialOrientation {
            dir: o.forward.iter().map(|&f| Some(f)).collect(),
            base: o.base,
        }
    }
}

impl fmt::Debug for PartialOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.base.edges().iter().zip(&self.dir).map(|(&(u, v), d)| {
            let (a, b) = (self.base.label(u), self.base.label(v));
            match d {
                Some(true) => format!("{a}->{b}"),
                Some(false) => format!("{b}->{a}"),
                None => format!("{a}-{b}"),
            }
        });
        f.debug_list().entries(items).finish()
    }
}
