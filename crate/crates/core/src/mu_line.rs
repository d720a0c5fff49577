//! The line graph of the Mycielski graph of an odd cycle and its orientation D.
//!
//! Fix `n >= 1` and the cycle `C` on `1..=2n+1`. Edges of `μ(C)` get
//! structured names:
//!
//! * `c(i,j)` for a cycle edge `{i, j}` with `i < j`;
//! * `a(i,j')` for an edge between `i` and the shadow `j'`, and `a(0,j')`
//!   for an edge between the apex `0` and `j'`.
//!
//! In the line graph the `a`-vertices (the *b-part*) carry the line graph of
//! a bipartite graph and are grouped into rows `L_i` (first index `i`) and
//! columns `L'_j` (primed index `j`). The `c`-vertices (the *c-part*) form a
//! cycle.
//!
//! [`orientation_d`] orients rows towards larger primed index, columns
//! towards smaller first index, the c-part as a descending chain closed
//! through `c(1,2n+1)`, and every edge between the parts from the
//! `a`-vertex to the `c`-vertex.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::generators::{complete_bipartite, cycle, line_graph, mycielski};
use crate::graph::{Graph, GraphError};
use crate::orientation::{Orientation, OrientationError};

/// Name of an edge of `μ(C_{2n+1})`, and of the matching line-graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    /// `c(i,j)`, `i < j`.
    Cycle(usize, usize),
    /// `a(i,j')`.
    Bipartite(usize, usize),
}

impl EdgeLabel {
    pub fn c(i: usize, j: usize) -> EdgeLabel {
        EdgeLabel::Cycle(i.min(j), i.max(j))
    }

    pub fn a(i: usize, j: usize) -> EdgeLabel {
        EdgeLabel::Bipartite(i, j)
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, EdgeLabel::Cycle(..))
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self, EdgeLabel::Bipartite(..))
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Cycle(i, j) => write!(f, "c({i},{j})"),
            EdgeLabel::Bipartite(i, j) => write!(f, "a({i},{j}')"),
        }
    }
}

impl Serialize for EdgeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an edge label: `{0}`")]
pub struct EdgeLabelParseError(pub String);

impl FromStr for EdgeLabel {
    type Err = EdgeLabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || EdgeLabelParseError(s.to_string());
        let (kind, rest) = s.split_at_checked(1).ok_or_else(err)?;
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (i, j) = inner.split_once(',').ok_or_else(err)?;
        let num = |t: &str| -> Result<usize, EdgeLabelParseError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            t.parse().map_err(|_| err())
        };
        match kind {
            "c" => {
                let (i, j) = (num(i)?, num(j)?);
                if i >= j {
                    return Err(err());
                }
                Ok(EdgeLabel::Cycle(i, j))
            }
            "a" => Ok(EdgeLabel::Bipartite(
                num(i)?,
                num(j.strip_suffix('\'').ok_or_else(err)?)?,
            )),
            _ => Err(err()),
        }
    }
}

fn check_n(n: usize, min: usize) -> Result<(), GraphError> {
    if n < min {
        return Err(GraphError::SizeOutOfRange(format!(
            "n must be at least {min} (got {n})"
        )));
    }
    Ok(())
}

/// `μ(C_{2n+1})` together with the name of each of its edges.
#[derive(Debug, Clone)]
pub struct LabeledMu {
    pub graph: Graph,
    /// `labels[e]` names `graph.edges()[e]`.
    pub labels: Vec<EdgeLabel>,
}

impl LabeledMu {
    pub fn label_of(&self, u: &str, v: &str) -> Option<EdgeLabel> {
        let (a, b) = (self.graph.index_of(u)?, self.graph.index_of(v)?);
        self.graph.edge_index(a, b).map(|e| self.labels[e])
    }
}

fn name_edge(u: &str, v: &str) -> EdgeLabel {
    let idx = |s: &str| s.trim_end_matches('\'').parse::<usize>().unwrap();
    match (u.ends_with('\''), v.ends_with('\'')) {
        (false, false) => EdgeLabel::c(idx(u), idx(v)),
        (false, true) => EdgeLabel::a(idx(u), idx(v)),
        (true, false) => EdgeLabel::a(idx(v), idx(u)),
        (true, true) => unreachable!("shadow vertices are independent"),
    }
}

/// `μ(C_{2n+1})` with every edge named; `8n + 4` edges.
pub fn labeled_mu_cycle(n: usize) -> Result<LabeledMu, GraphError> {
    check_n(n, 1)?;
    let graph = mycielski(&cycle(2 * n + 1)?)?;
    let labels = graph.edge_labels().map(|(u, v)| name_edge(u, v)).collect();
    Ok(LabeledMu { graph, labels })
}

/// `L(μ(C_{2n+1}))` with vertices named by [`EdgeLabel`].
pub fn line_of_mu(n: usize) -> Result<Graph, GraphError> {
    let mu = labeled_mu_cycle(n)?;
    let line = line_graph(&mu.graph)?;
    let names: HashMap<String, String> = mu
        .graph
        .edge_labels()
        .zip(&mu.labels)
        .map(|((u, v), l)| (crate::generators::line_vertex_label(u, v), l.to_string()))
        .collect();
    line.relabel(|l| names[l].clone())
}

fn part(n: usize, bipartite: bool) -> Result<Vec<String>, GraphError> {
    Ok(labeled_mu_cycle(n)?
        .labels
        .iter()
        .filter(|l| l.is_bipartite() == bipartite)
        .map(|l| l.to_string())
        .collect())
}

/// The `a`-vertices of [`line_of_mu`]; `6n + 3` of them.
pub fn b_part(n: usize) -> Result<Vec<String>, GraphError> {
    part(n, true)
}

/// The `c`-vertices of [`line_of_mu`]; `2n + 1` of them.
pub fn c_part(n: usize) -> Result<Vec<String>, GraphError> {
    part(n, false)
}

/// Arc rule on the line graph of a complete bipartite graph: along a row
/// towards the larger column, along a column towards the smaller row.
fn rook_forward(p: (usize, usize), q: (usize, usize)) -> bool {
    if p.0 == q.0 {
        p.1 < q.1
    } else {
        p.0 > q.0
    }
}

/// Orientation of `L(K_{m,n})`, vertices `a(i,j')` for `1 <= i <= m`,
/// `1 <= j <= n`, by the row/column rule.
pub fn rook_orientation(m: usize, n: usize) -> Result<Orientation, GraphError> {
    let line = line_graph(&complete_bipartite(m, n)?)?;
    let base = line.relabel(|l| {
        let inner = &l[2..l.len() - 1];
        format!("a({inner})")
    })?;
    let coords: Vec<(usize, usize)> = base
        .labels()
        .iter()
        .map(|l| match l.parse::<EdgeLabel>() {
            Ok(EdgeLabel::Bipartite(i, j)) => (i, j),
            _ => unreachable!(),
        })
        .collect();
    Ok(Orientation::from_fn(base, |u, v| {
        rook_forward(coords[u], coords[v])
    }))
}

/// The arcs among the c-part: `c(i+1,i+2) -> c(i,i+1)` for `1 <= i < 2n`,
/// `c(1,2n+1) -> c(1,2)` and `c(2n,2n+1) -> c(1,2n+1)`.
pub fn cycle_part_arcs(n: usize) -> Vec<(EdgeLabel, EdgeLabel)> {
    let m = 2 * n + 1;
    let mut arcs: Vec<_> = (1..m - 1)
        .map(|i| (EdgeLabel::c(i + 1, i + 2), EdgeLabel::c(i, i + 1)))
        .collect();
    arcs.push((EdgeLabel::c(1, m), EdgeLabel::c(1, 2)));
    arcs.push((EdgeLabel::c(m - 1, m), EdgeLabel::c(1, m)));
    arcs
}

/// The orientation D of `L(μ(C_{2n+1}))`, `n >= 2`.
pub fn orientation_d(n: usize) -> Result<Orientation, OrientationError> {
    check_n(n, 2)?;
    let base = line_of_mu(n)?;
    let c_arcs: HashMap<(EdgeLabel, EdgeLabel), bool> = cycle_part_arcs(n)
        .into_iter()
        .flat_map(|(t, h)| [((t, h), true), ((h, t), false)])
        .collect();
    let names: Vec<EdgeLabel> = base.labels().iter().map(|l| l.parse().unwrap()).collect();
    let mut missing = None;
    let d = Orientation::from_fn(base, |u, v| match (names[u], names[v]) {
        (EdgeLabel::Bipartite(i, j), EdgeLabel::Bipartite(k, l)) => rook_forward((i, j), (k, l)),
        (EdgeLabel::Bipartite(..), EdgeLabel::Cycle(..)) => true,
        (EdgeLabel::Cycle(..), EdgeLabel::Bipartite(..)) => false,
        (p, q) => *c_arcs.get(&(p, q)).unwrap_or_else(|| {
            missing = Some((p, q));
            &true
        }),
    });
    assert!(missing.is_none(), "c-part edge without a rule: {missing:?}");
    Ok(d)
}

/// Rows and columns of the b-part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSets {
    pub n: usize,
    /// `rows[i]` is `L_i`, `0 <= i <= 2n+1`, sorted by column.
    pub rows: Vec<Vec<EdgeLabel>>,
    /// `columns[j - 1]` is `L'_j`, `1 <= j <= 2n+1`, sorted by row.
    pub columns: Vec<Vec<EdgeLabel>>,
}

impl LevelSets {
    pub fn row(&self, i: usize) -> &[EdgeLabel] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> &[EdgeLabel] {
        &self.columns[j - 1]
    }
}

/// Groups the b-part of [`line_of_mu`] by row and by column.
pub fn level_sets(n: usize) -> Result<LevelSets, GraphError> {
    let m = 2 * n + 1;
    let mut rows = vec![Vec::new(); m + 1];
    let mut columns = vec![Vec::new(); m];
    for l in b_part(n)? {
        let label: EdgeLabel = l.parse().unwrap();
        if let EdgeLabel::Bipartite(i, j) = label {
            rows[i].push(label);
            columns[j - 1].push(label);
        }
    }
    for r in &mut rows {
        r.sort_by_key(|l| match l {
            EdgeLabel::Bipartite(_, j) => *j,
            _ => 0,
        });
    }
    for c in &mut columns {
        c.sort();
    }
    Ok(LevelSets { n, rows, columns })
}

/// Outcome of one reachability clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseOutcome {
    pub holds: bool,
    pub statement: String,
    /// A forbidden path, or the `[from, to]` pair of a missing one.
    pub counterexample: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseReport {
    pub n: usize,
    /// The structural claims about D, in a fixed order.
    pub clauses: Vec<(&'static str, ClauseOutcome)>,
    /// Related statements reported for information only.
    pub supplementary: Vec<(&'static str, ClauseOutcome)>,
}

impl ClauseReport {
    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(|(_, c)| c.holds)
    }

    pub fn clause(&self, id: &str) -> Option<&ClauseOutcome> {
        self.clauses
            .iter()
            .chain(&self.supplementary)
            .find(|(k, _)| *k == id)
            .map(|(_, c)| c)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.clauses
            .iter()
            .filter(|(_, c)| !c.holds)
            .map(|(k, _)| *k)
            .collect()
    }
}

impl Serialize for ClauseReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Clauses<'a>(&'a [(&'static str, ClauseOutcome)]);
        impl Serialize for Clauses<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("n", &self.n)?;
        m.serialize_entry("all_hold", &self.all_hold())?;
        m.serialize_entry("clauses", &Clauses(&self.clauses))?;
        m.serialize_entry("supplementary", &Clauses(&self.supplementary))?;
        m.end()
    }
}

/// Breadth-first search for a path of at least one arc from `sources` to
/// `targets`, using only vertices in `allowed`.
fn find_path(
    out: &[BitSet],
    sources: &BitSet,
    targets: &BitSet,
    allowed: &BitSet,
) -> Option<Vec<usize>> {
    let n = out.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = BitSet::new(n);
    let mut queue: std::collections::VecDeque<usize> = sources.iter().collect();
    for s in sources.iter() {
        seen.insert(s);
    }
    while let Some(u) = queue.pop_front() {
        for w in out[u].iter() {
            if !allowed.contains(w) {
                continue;
            }
            if targets.contains(w) {
                let mut path = vec![w, u];
                let mut cur = u;
                while parent[cur] != usize::MAX {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if !seen.contains(w) {
                seen.insert(w);
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

struct Checker<'a> {
    d: &'a Orientation,
    out: Vec<BitSet>,
    everything: BitSet,
    b_only: BitSet,
    upper_b: BitSet,
}

impl Checker<'_> {
    fn set(&self, labels: &[EdgeLabel]) -> BitSet {
        let g = self.d.base();
        let mut s = BitSet::new(g.vertex_count());
        for l in labels {
            s.insert(g.index_of(&l.to_string()).expect("label of line_of_mu"));
        }
        s
    }

    fn names(&self, path: &[usize]) -> Vec<String> {
        path.iter()
            .map(|&v| self.d.base().label(v).to_string())
            .collect()
    }

    /// No path from any `from` set to its `to` set inside `allowed`.
    fn forbid(
        &self,
        statement: String,
        pairs: Vec<(BitSet, BitSet)>,
        allowed: &BitSet,
    ) -> ClauseOutcome {
        let counterexample = pairs
            .iter()
            .find_map(|(from, to)| find_path(&self.out, from, to, allowed))
            .map(|p| self.names(&p));
        ClauseOutcome {
            holds: counterexample.is_none(),
            statement,
            counterexample,
        }
    }

    /// A path from every vertex of `from` to `to`.
    fn require(&self, statement: String, pairs: Vec<(Vec<EdgeLabel>, EdgeLabel)>) -> ClauseOutcome {
        let counterexample = pairs.iter().find_map(|(from, to)| {
            let target = self.set(&[*to]);
            from.iter().find_map(|f| {
                let src = self.set(&[*f]);
                match find_path(&self.out, &src, &target, &self.everything) {
                    Some(_) => None,
                    None => Some(vec![f.to_string(), to.to_string()]),
                }
            })
        });
        ClauseOutcome {
            holds: counterexample.is_none(),
            statement,
            counterexample,
        }
    }
}

/// Checks the reachability structure of D on `line_of_mu(n)`.
pub fn check_level_clauses(n: usize) -> Result<ClauseReport, OrientationError> {
    check_level_clauses_for(n, &orientation_d(n)?)
}

/// As [`check_level_clauses`], for any orientation of `line_of_mu(n)`; used to
/// probe how the clauses react to modified orientations.
pub fn check_level_clauses_for(
    n: usize,
    d: &Orientation,
) -> Result<ClauseReport, OrientationError> {
    check_n(n, 2)?;
    let base = d.base();
    if *base != line_of_mu(n)? {
        return Err(OrientationError::Graph(GraphError::SizeOutOfRange(
            format!("orientation is not over the line graph for n = {n}"),
        )));
    }
    let ls = level_sets(n)?;
    let m = 2 * n + 1;
    let nv = base.vertex_count();
    let mut ck = Checker {
        d,
        out: d.out_sets(),
        everything: BitSet::full(nv),
        b_only: BitSet::new(nv),
        upper_b: BitSet::new(nv),
    };
    let all_b: Vec<EdgeLabel> = ls.rows.iter().flatten().copied().collect();
    ck.b_only = ck.set(&all_b);
    let upper: Vec<EdgeLabel> = ls.rows[1..].iter().flatten().copied().collect();
    ck.upper_b = ck.set(&upper);
    let row = |i: usize| ck.set(ls.row(i));
    let rows_in = |r: std::ops::RangeInclusive<usize>| {
        let v: Vec<EdgeLabel> = r.flat_map(|i| ls.row(i).to_vec()).collect();
        ck.set(&v)
    };
    let col = |j: usize| ck.set(ls.column(j));
    let cols_in = |r: std::ops::RangeInclusive<usize>| {
        let v: Vec<EdgeLabel> = r.flat_map(|j| ls.column(j).to_vec()).collect();
        ck.set(&v)
    };

    let mut clauses = Vec::new();
    clauses.push((
        "rows_never_climb",
        ck.forbid(
            "within the b-part, no path from L_i to any L_j with j > i".into(),
            (0..m).map(|i| (row(i), rows_in(i + 1..=m))).collect(),
            &ck.b_only,
        ),
    ));
    clauses.push((
        "rows_skip_predecessor",
        ck.forbid(
            format!("within the b-part, no path from L_i to L_(i-1) for 2 <= i <= {m}"),
            (2..=m).map(|i| (row(i), row(i - 1))).collect(),
            &ck.b_only,
        ),
    ));
    clauses.push((
        "columns_never_descend",
        ck.forbid(
            "within the b-part, no path from L'_i to any L'_j with j < i".into(),
            (2..=m).map(|i| (col(i), cols_in(1..=i - 1))).collect(),
            &ck.b_only,
        ),
    ));
    clauses.push((
        "columns_skip_successor",
        ck.forbid(
            format!(
                "within the b-part, no path from L'_i to L'_(i+1) for 1 <= i <= {}",
                m - 1
            ),
            (1..m).map(|i| (col(i), col(i + 1))).collect(),
            &ck.b_only,
        ),
    ));
    clauses.push((
        "cycle_descends",
        ck.require(
            format!(
                "a path from c(i,i+1) to c(j,j+1) whenever 1 <= j < i <= {}",
                m - 1
            ),
            (2..m)
                .flat_map(|i| {
                    (1..i).map(move |j| (vec![EdgeLabel::c(i, i + 1)], EdgeLabel::c(j, j + 1)))
                })
                .collect(),
        ),
    ));
    clauses.push((
        "rows_reach_cycle",
        ck.require(
            format!(
                "a path from every vertex of L_j to c(i,i+1) whenever 2 <= i <= {} and j >= i",
                m - 1
            ),
            (2..m)
                .flat_map(|i| (i..=m).map(move |j| (i, j)))
                .map(|(i, j)| (ls.row(j).to_vec(), EdgeLabel::c(i, i + 1)))
                .collect(),
        ),
    ));
    clauses.push((
        "rows_reach_closing_edge",
        ck.require(
            format!(
                "a path from every vertex of L_1, L_{} and L_{m} to c(1,{m})",
                m - 1
            ),
            [1, m - 1, m]
                .into_iter()
                .map(|j| (ls.row(j).to_vec(), EdgeLabel::c(1, m)))
                .collect(),
        ),
    ));
    let c_set = {
        let c: Vec<EdgeLabel> = c_part(n)?.iter().map(|l| l.parse().unwrap()).collect();
        ck.set(&c)
    };
    let back_arc = d
        .arcs()
        .find(|&(u, v)| c_set.contains(u) && ck.b_only.contains(v))
        .map(|(u, v)| ck.names(&[u, v]));
    clauses.push((
        "no_arc_from_cycle_part",
        ClauseOutcome {
            holds: back_arc.is_none(),
            statement: "no arc from a c-vertex to an a-vertex".into(),
            counterexample: back_arc,
        },
    ));

    let upper_col = |j: usize| {
        let mut s = col(j);
        s.intersect_with(&ck.upper_b);
        s
    };
    let supplementary = vec![(
        "columns_skip_successor_above_row_zero",
        ck.forbid(
            format!(
                "avoiding L_0, no path from L'_i to L'_(i+1) for 1 <= i <= {}",
                m - 1
            ),
            (1..m).map(|i| (upper_col(i), upper_col(i + 1))).collect(),
            &ck.upper_b,
        ),
    )];
    Ok(ClauseReport {
        n,
        clauses,
        supplementary,
    })
}

/// Set comparison between an orientation and a list of arcs given by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcDiff {
    /// Arcs of the orientation absent from the list.
    pub only_in_orientation: Vec<(String, String)>,
    /// Listed arcs the orientation does not have (reversed or non-edges).
    pub only_in_list: Vec<(String, String)>,
    /// Arcs listed more than once.
    pub duplicates: Vec<(String, String)>,
}

impl ArcDiff {
    pub fn is_exact(&self) -> bool {
        self.only_in_orientation.is_empty()
            && self.only_in_list.is_empty()
            && self.duplicates.is_empty()
    }
}

pub fn compare_arcs(d: &Orientation, arcs: &[(String, String)]) -> ArcDiff {
    let mut counts: HashMap<(&str, &str), usize> = HashMap::new();
    for (t, h) in arcs {
        *counts.entry((t, h)).or_default() += 1;
    }
    let mut duplicates: Vec<(String, String)> = counts
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(&(t, h), _)| (t.to_string(), h.to_string()))
        .collect();
    duplicates.sort();
    let only_in_orientation = d
        .arc_labels()
        .filter(|(t, h)| !counts.contains_key(&(*t, *h)))
        .map(|(t, h)| (t.to_string(), h.to_string()))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let only_in_list = arcs
        .iter()
        .filter(|(t, h)| !d.has_arc_labels(t, h) && seen.insert((t, h)))
        .cloned()
        .collect();
    ArcDiff {
        only_in_orientation,
        only_in_list,
        duplicates,
    }
}

/// The arcs of the published drawing of D for `n = 2`, one per drawn edge
/// in drawing order.
pub fn drawn_arcs_n2() -> Vec<(String, String)> {
    include_str!("../data/line_mu_c5_drawing.txt")
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let (t, h) = l.split_once("->").expect("arc line");
            (t.trim().to_string(), h.trim().to_string())
        })
        .collect()
}
