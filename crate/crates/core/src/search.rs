//! Backtracking search for semi-transitive orientations.
//!
//! The search keeps a partial orientation together with its reachability
//! closure. A direction for a free edge is *legal* when adding it creates
//! neither a directed cycle nor a decided shortcut: an arc `u -> v` and two
//! vertices `p, q` on paths from `u` to `v` with `q` reachable from `p` but
//! `p, q` not adjacent in the graph. No later choice can repair either
//! defect, so both prune safely. Once every edge is decided, the absence of
//! such configurations is exactly semi-transitivity.
//!
//! At each node, edges with a single legal direction are fixed immediately
//! (zero legal directions ends the branch). The search then branches on the
//! first free edge in canonical order, forward direction first. Every leaf
//! (dead end or complete orientation) counts as one explored branch.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::orientation::{Orientation, PartialOrientation};
use crate::shortcut::is_semi_transitive;

/// Free-edge limit for [`find_semi_transitive`] and [`decide_word_representable`].
pub const MAX_FREE_EDGES: usize = 24;
/// Free-edge limit for [`enumerate_completions`].
pub const MAX_ENUMERATION_FREE_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{what} limited to {limit} (got {actual}); set the guard override to lift this")]
    ScaleGuard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("the fixed partial orientation is over a different graph")]
    BaseMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `0` is treated as `1`.
    pub workers: usize,
    pub guard_override: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            guard_override: false,
        }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions {
            workers,
            ..SearchOptions::default()
        }
    }
}

/// Result of a full search run.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub orientation: Option<Orientation>,
    pub branches_explored: u64,
    /// Branches explored inside each worker. Leaves met while splitting the
    /// tree for the workers are counted in `branches_explored` only.
    pub per_worker: Vec<u64>,
    /// Whether the first edge was pinned to one direction.
    pub pinned: Option<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Representable,
    NonRepresentable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Representable => "representable",
            Verdict::NonRepresentable => "non_representable",
        })
    }
}

/// Evidence that the search space held no semi-transitive orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustionRecord {
    pub branches_explored: u64,
    pub per_worker: Vec<u64>,
    pub symmetry_note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Representable { witness: Orientation },
    NonRepresentable { exhaustion: ExhaustionRecord },
}

impl Certificate {
    pub fn verdict(&self) -> Verdict {
        match self {
            Certificate::Representable { .. } => Verdict::Representable,
            Certificate::NonRepresentable { .. } => Verdict::NonRepresentable,
        }
    }

    pub fn is_representable(&self) -> bool {
        self.verdict() == Verdict::Representable
    }

    pub fn witness(&self) -> Option<&Orientation> {
        match self {
            Certificate::Representable { witness } => Some(witness),
            Certificate::NonRepresentable { .. } => None,
        }
    }

    pub fn exhaustion(&self) -> Option<&ExhaustionRecord> {
        match self {
            Certificate::Representable { .. } => None,
            Certificate::NonRepresentable { exhaustion } => Some(exhaustion),
        }
    }

    /// Re-checks the witness, if any.
    pub fn verify(&self) -> bool {
        self.witness().is_none_or(is_semi_transitive)
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "verdict", rename_all = "snake_case")]
        enum Repr<'a> {
            Representable { witness: Vec<[&'a str; 2]> },
            NonRepresentable { exhaustion: &'a ExhaustionRecord },
        }
        match self {
            Certificate::Representable { witness } => Repr::Representable {
                witness: witness.arc_labels().map(|(u, v)| [u, v]).collect(),
            },
            Certificate::NonRepresentable { exhaustion } => Repr::NonRepresentable { exhaustion },
        }
        .serialize(s)
    }
}

/// A semi-transitive orientation of `g` extending `fixed`, or `None` after
/// exhausting the search space.
pub fn find_semi_transitive(
    g: &Graph,
    fixed: Option<&PartialOrientation>,
    opts: &SearchOptions,
) -> Result<Option<Orientation>, SearchError> {
    Ok(search(g, fixed, opts)?.orientation)
}

/// Runs the search and returns its statistics along with the result.
pub fn search(
    g: &Graph,
    fixed: Option<&PartialOrientation>,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    let start = match fixed {
        Some(p) if p.base() != g => return Err(SearchError::BaseMismatch),
        Some(p) => p.clone(),
        None => PartialOrientation::new(g.clone()),
    };
    guard(
        start.free_count(),
        MAX_FREE_EDGES,
        "free edges in orientation search",
        opts,
    )?;
    let ctx = Ctx::new(g);
    let mut pinned = None;
    let mut root = ctx.root(start.directions());
    if start.directed_count() == 0 && g.edge_count() > 0 {
        let (u, v) = g.edges()[0];
        if let Some(r) = root.as_mut() {
            ctx.apply(r, u, v);
        }
        pinned = Some((g.label(u).to_string(), g.label(v).to_string()));
    }
    let Some(root) = root else {
        return Ok(SearchOutcome {
            orientation: None,
            branches_explored: 1,
            per_worker: vec![1],
            pinned,
        });
    };
    let workers = opts.workers.max(1);
    let (found, branches_explored, per_worker) = if workers == 1 {
        let mut count = 0;
        let found = ctx.first_solution(root, &mut count, &|| false);
        (found, count, vec![count])
    } else {
        ctx.parallel(root, workers)
    };
    let orientation = found.map(|dir| ctx.total(&dir));
    if let Some(o) = &orientation {
        assert!(
            is_semi_transitive(o),
            "search returned a non-semi-transitive orientation"
        );
        assert!(start.is_extended_by(o));
    }
    Ok(SearchOutcome {
        orientation,
        branches_explored,
        per_worker,
        pinned,
    })
}

/// Decides word-representability of `g` through the orientation search.
pub fn decide_word_representable(
    g: &Graph,
    opts: &SearchOptions,
) -> Result<Certificate, SearchError> {
    let out = search(g, None, opts)?;
    Ok(match out.orientation {
        Some(witness) => Certificate::Representable { witness },
        None => {
            let symmetry_note = match &out.pinned {
                Some((u, v)) => format!(
                    "edge {u}-{v} pinned as {u} -> {v}; reversing every arc preserves semi-transitivity"
                ),
                None => "no symmetry reduction".to_string(),
            };
            Certificate::NonRepresentable {
                exhaustion: ExhaustionRecord {
                    branches_explored: out.branches_explored,
                    per_worker: out.per_worker,
                    symmetry_note,
                },
            }
        }
    })
}

/// All semi-transitive total extensions of `p`, at most `limit`, in search
/// order (forward directions first).
pub fn enumerate_completions(
    p: &PartialOrientation,
    limit: usize,
    guard_override: bool,
) -> Result<Vec<Orientation>, SearchError> {
    let opts = SearchOptions {
        workers: 1,
        guard_override,
    };
    guard(
        p.free_count(),
        MAX_ENUMERATION_FREE_EDGES,
        "free edges in completion enumeration",
        &opts,
    )?;
    let ctx = Ctx::new(p.base());
    let mut found = Vec::new();
    if let Some(root) = ctx.root(p.directions()) {
        if limit > 0 {
            ctx.all_solutions(root, limit, &mut found);
        }
    }
    let out: Vec<Orientation> = found.iter().map(|d| ctx.total(d)).collect();
    for o in &out {
        assert!(is_semi_transitive(o) && p.is_extended_by(o));
    }
    Ok(out)
}

fn guard(
    actual: usize,
    limit: usize,
    what: &'static str,
    opts: &SearchOptions,
) -> Result<(), SearchError> {
    if !opts.guard_override && actual > limit {
        return Err(SearchError::ScaleGuard {
            what,
            limit,
            actual,
        });
    }
    Ok(())
}

#[derive(Clone)]
struct Node {
    dir: Vec<Option<bool>>,
    reach: Vec<BitSet>,
    anc: Vec<BitSet>,
}

enum Step {
    Dead,
    Complete,
    Branch(usize),
}

enum Item {
    Open(Node),
    Solved(Vec<Option<bool>>),
}

struct Ctx<'a> {
    g: &'a Graph,
    nonadj: Vec<BitSet>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        let nonadj = (0..n)
            .map(|v| {
                let mut s = BitSet::full(n);
                s.difference_with(g.neighbors(v));
                s.remove(v);
                s
            })
            .collect();
        Ctx { g, nonadj }
    }

    /// The node with the given directions applied; `None` if they are
    /// already contradictory.
    fn root(&self, dirs: &[Option<bool>]) -> Option<Node> {
        let n = self.g.vertex_count();
        let mut node = Node {
            dir: vec![None; dirs.len()],
            reach: vec![BitSet::new(n); n],
            anc: vec![BitSet::new(n); n],
        };
        for (e, d) in dirs.iter().enumerate() {
            if let Some(f) = *d {
                let (u, v) = self.g.edges()[e];
                let (x, y) = if f { (u, v) } else { (v, u) };
                if !self.legal(&node, x, y) {
                    return None;
                }
                self.apply(&mut node, x, y);
            }
        }
        Some(node)
    }

    fn total(&self, dir: &[Option<bool>]) -> Orientation {
        let mut it = dir.iter().map(|d| d.expect("undecided edge in solution"));
        Orientation::from_fn(self.g.clone(), |_, _| it.next().unwrap())
    }

    fn legal(&self, node: &Node, x: usize, y: usize) -> bool {
        if x == y || node.reach[y].contains(x) {
            return false;
        }
        let mut ax = node.anc[x].clone();
        ax.insert(x);
        let mut dy = node.reach[y].clone();
        dy.insert(y);
        let reach = |w: usize| {
            let mut r = node.reach[w].clone();
            if ax.contains(w) {
                r.union_with(&dy);
            }
            r
        };
        let anc = |w: usize| {
            let mut a = node.anc[w].clone();
            if dy.contains(w) {
                a.union_with(&ax);
            }
            a
        };
        let new_arc = std::iter::once((x, y));
        let decided = self
            .g
            .edges()
            .iter()
            .zip(&node.dir)
            .filter_map(|(&(u, v), d)| d.map(|f| if f { (u, v) } else { (v, u) }));
        for (u, v) in new_arc.chain(decided) {
            if !ax.contains(u) || !dy.contains(v) {
                continue;
            }
            let mut between = reach(u);
            between.intersect_with(&anc(v));
            between.insert(u);
            between.insert(v);
            for p in between.iter() {
                if reach(p).first_common3(&between, &self.nonadj[p]).is_some() {
                    return false;
                }
            }
        }
        true
    }

    fn apply(&self, node: &mut Node, x: usize, y: usize) {
        let mut ax = node.anc[x].clone();
        ax.insert(x);
        let mut dy = node.reach[y].clone();
        dy.insert(y);
        for a in ax.iter() {
            node.reach[a].union_with(&dy);
        }
        for b in dy.iter() {
            node.anc[b].union_with(&ax);
        }
        let e = self.g.edge_index(x, y).expect("not an edge");
        node.dir[e] = Some(x < y);
    }

    /// Fixes forced edges until none remain, then reports what to do.
    fn propagate(&self, node: &mut Node) -> Step {
        loop {
            let mut changed = false;
            let mut branch = None;
            for e in 0..node.dir.len() {
                if node.dir[e].is_some() {
                    continue;
                }
                let (u, v) = self.g.edges()[e];
                match (self.legal(node, u, v), self.legal(node, v, u)) {
                    (false, false) => return Step::Dead,
                    (true, false) => {
                        self.apply(node, u, v);
                        changed = true;
                    }
                    (false, true) => {
                        self.apply(node, v, u);
                        changed = true;
                    }
                    (true, true) => {
                        branch.get_or_insert(e);
                    }
                }
            }
            if !changed {
                return match branch {
                    Some(e) => Step::Branch(e),
                    None => Step::Complete,
                };
            }
        }
    }

    fn children(&self, node: Node, e: usize) -> [Node; 2] {
        let (u, v) = self.g.edges()[e];
        let mut fwd = node.clone();
        self.apply(&mut fwd, u, v);
        let mut bwd = node;
        self.apply(&mut bwd, v, u);
        [fwd, bwd]
    }

    fn first_solution(
        &self,
        mut node: Node,
        count: &mut u64,
        abort: &dyn Fn() -> bool,
    ) -> Option<Vec<Option<bool>>> {
        match self.propagate(&mut node) {
            Step::Dead => {
                *count += 1;
                None
            }
            Step::Complete => {
                *count += 1;
                Some(node.dir)
            }
            Step::Branch(e) => {
                for child in self.children(node, e) {
                    if abort() {
                        return None;
                    }
                    if let Some(found) = self.first_solution(child, count, abort) {
                        return Some(found);
                    }
                }
                None
            }
        }
    }

    fn all_solutions(&self, mut node: Node, limit: usize, out: &mut Vec<Vec<Option<bool>>>) {
        match self.propagate(&mut node) {
            Step::Dead => {}
            Step::Complete => out.push(node.dir),
            Step::Branch(e) => {
                for child in self.children(node, e) {
                    if out.len() >= limit {
                        return;
                    }
                    self.all_solutions(child, limit, out);
                }
            }
        }
    }

    /// Splits the tree into subtrees in depth-first order, hands them to
    /// workers and keeps the solution from the earliest subtree.
    fn parallel(&self, root: Node, workers: usize) -> (Option<Vec<Option<bool>>>, u64, Vec<u64>) {
        let target = workers * 8;
        let mut items = vec![Item::Open(root)];
        let mut split_leaves = 0u64;
        loop {
            let open = items.iter().filter(|i| matches!(i, Item::Open(_))).count();
            if open == 0 || items.len() >= target {
                break;
            }
            let mut next = Vec::with_capacity(items.len() * 2);
            for item in items {
                match item {
                    Item::Solved(d) => next.push(Item::Solved(d)),
                    Item::Open(mut node) => match self.propagate(&mut node) {
                        Step::Dead => split_leaves += 1,
                        Step::Complete => {
                            split_leaves += 1;
                            next.push(Item::Solved(node.dir));
                        }
                        Step::Branch(e) => {
                            next.extend(self.children(node, e).map(Item::Open));
                        }
                    },
                }
            }
            items = next;
        }
        if let Some(first) = items.iter().position(|i| matches!(i, Item::Solved(_))) {
            // everything before it is open; only those could hold an earlier solution
            items.truncate(first + 1);
        }
        let items: Vec<Mutex<Option<Item>>> =
            items.into_iter().map(|i| Mutex::new(Some(i))).collect();
        let results: Vec<Mutex<Option<Vec<Option<bool>>>>> =
            items.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let per_worker: Vec<u64> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    s.spawn(|| {
                        let mut count = 0u64;
                        loop {
                            let i = next.fetch_add(1, Ordering::SeqCst);
                            if i >= items.len() || i > best.load(Ordering::SeqCst) {
                                break;
                            }
                            let item = items[i].lock().unwrap().take().unwrap();
                            let found = match item {
                                Item::Solved(d) => Some(d),
                                Item::Open(node) => {
                                    let abort = || best.load(Ordering::SeqCst) < i;
                                    self.first_solution(node, &mut count, &abort)
                                }
                            };
                            if let Some(d) = found {
                                *results[i].lock().unwrap() = Some(d);
                                best.fetch_min(i, Ordering::SeqCst);
                            }
                        }
                        count
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let found = results.into_iter().find_map(|r| r.into_inner().unwrap());
        let total = split_leaves + per_worker.iter().sum::<u64>();
        (found, total, per_worker)
    }
}
