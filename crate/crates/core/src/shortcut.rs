//! Shortcut detection and the semi-transitivity test.
//!
//! A shortcut is a directed path `v0 -> v1 -> … -> vk` on `k >= 3` distinct
//! vertices together with the arc `v0 -> vk`, where some forward pair
//! `vi, vj` (`i < j`, other than `(0, k)`) is *not* joined by the arc
//! `vi -> vj`. An orientation is semi-transitive when it is acyclic and has
//! no shortcut.
//!
//! [`find_shortcut`] is polynomial. For every arc `u -> v` it looks at the
//! set `B(u, v)` of vertices lying on some path from `u` to `v`; the arc is
//! shortcut-free exactly when, for every `x, y` in `B(u, v)` with `y`
//! reachable from `x`, the arc `x -> y` is present. Any violating pair is
//! spliced into a witness path `u ⇝ x ⇝ y ⇝ v`.
//! [`find_shortcut_bruteforce`] enumerates paths and serves as its oracle.

use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::orientation::{Orientation, OrientationError};

/// A verified shortcut in some orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortcutWitness {
    path: Vec<String>,
    missing: (usize, usize),
}

impl ShortcutWitness {
    /// Checks every component against `d`; `None` if anything is off.
    pub fn new(d: &Orientation, path: Vec<String>, missing: (usize, usize)) -> Option<Self> {
        let g = d.base();
        let idx: Vec<usize> = path
            .iter()
            .map(|l| g.index_of(l))
            .collect::<Option<Vec<_>>>()?;
        let k = idx.len().checked_sub(1)?;
        if k < 3 {
            return None;
        }
        let mut seen = BitSet::new(g.vertex_count());
        for &v in &idx {
            if seen.contains(v) {
                return None;
            }
            seen.insert(v);
        }
        let arcs_ok = idx.windows(2).all(|w| d.has_arc(w[0], w[1])) && d.has_arc(idx[0], idx[k]);
        let (i, j) = missing;
        if !arcs_ok || i >= j || j > k || (i, j) == (0, k) || d.has_arc(idx[i], idx[j]) {
            return None;
        }
        Some(ShortcutWitness { path, missing })
    }

    /// `v0 … vk`; the shortcutting arc is `v0 -> vk`.
    pub fn path(&self) -> &[String] {
        &self.path
    }

    pub fn shortcutting_arc(&self) -> (&str, &str) {
        (&self.path[0], &self.path[self.path.len() - 1])
    }

    /// Positions `(i, j)` in the path with no arc `vi -> vj`.
    pub fn missing_pair(&self) -> (usize, usize) {
        self.missing
    }
}

impl fmt::Display for ShortcutWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.shortcutting_arc();
        let (i, j) = self.missing;
        write!(
            f,
            "path {} with arc {a} -> {b}, missing {} -> {}",
            self.path.join(" -> "),
            self.path[i],
            self.path[j]
        )
    }
}

/// Some shortcut of an acyclic orientation, or `None`.
///
/// Errors on a cyclic input.
pub fn find_shortcut(d: &Orientation) -> Result<Option<ShortcutWitness>, OrientationError> {
    let reach = d.reachability().ok_or(OrientationError::Cyclic)?;
    let out = d.out_sets();
    let n = d.base().vertex_count();
    let mut anc = vec![BitSet::new(n); n];
    for (u, r) in reach.iter().enumerate() {
        for w in r.iter() {
            anc[w].insert(u);
        }
    }
    let mut not_out = Vec::with_capacity(n);
    for s in &out {
        let mut c = BitSet::full(n);
        c.difference_with(s);
        not_out.push(c);
    }
    for (u, v) in d.arcs() {
        let mut between = reach[u].intersection(&anc[v]);
        between.insert(u);
        between.insert(v);
        for x in between.iter() {
            if let Some(y) = reach[x].first_common3(&between, &not_out[x]) {
                let mut path = walk(&out, &reach, u, x);
                path.extend(walk(&out, &reach, x, y).into_iter().skip(1));
                path.extend(walk(&out, &reach, y, v).into_iter().skip(1));
                let i = path.iter().position(|&p| p == x).unwrap();
                let j = path.iter().position(|&p| p == y).unwrap();
                let labels = path
                    .iter()
                    .map(|&p| d.base().label(p).to_string())
                    .collect();
                let w = ShortcutWitness::new(d, labels, (i, j))
                    .expect("spliced shortcut failed verification");
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// A directed path from `a` to `b` (`[a]` when equal); `b` must be
/// reachable from `a`.
fn walk(out: &[BitSet], reach: &[BitSet], a: usize, b: usize) -> Vec<usize> {
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        cur = out[cur]
            .iter()
            .find(|&w| w == b || reach[w].contains(b))
            .expect("target not reachable");
        path.push(cur);
    }
    path
}

/// Vertex limit for [`find_shortcut_bruteforce`] unless overridden.
pub const BRUTEFORCE_MAX_VERTICES: usize = 12;

/// Path-enumeration oracle for [`find_shortcut`].
///
/// Walks every directed path of at least four vertices, in order of start
/// vertex and then out-neighbour position, and reports the first one whose
/// end points carry an arc and whose vertex set misses a forward arc.
pub fn find_shortcut_bruteforce(
    d: &Orientation,
    guard_override: bool,
) -> Result<Option<ShortcutWitness>, OrientationError> {
    let n = d.base().vertex_count();
    if !guard_override && n > BRUTEFORCE_MAX_VERTICES {
        return Err(OrientationError::ScaleGuard {
            what: "brute-force shortcut search vertex count",
            limit: BRUTEFORCE_MAX_VERTICES,
            actual: n,
        });
    }
    if !d.is_acyclic() {
        return Err(OrientationError::Cyclic);
    }
    let out: Vec<Vec<usize>> = d.out_sets().iter().map(|s| s.iter().collect()).collect();
    let mut path = Vec::with_capacity(n);
    for s in 0..n {
        path.push(s);
        if let Some((p, m)) = extend_paths(d, &out, &mut path) {
            let labels = p.iter().map(|&v| d.base().label(v).to_string()).collect();
            return Ok(Some(
                ShortcutWitness::new(d, labels, m).expect("oracle produced a bad witness"),
            ));
        }
        path.pop();
    }
    Ok(None)
}

fn extend_paths(
    d: &Orientation,
    out: &[Vec<usize>],
    path: &mut Vec<usize>,
) -> Option<(Vec<usize>, (usize, usize))> {
    let k = path.len() - 1;
    if k >= 3 && d.has_arc(path[0], path[k]) {
        for i in 0..k {
            for j in i + 1..=k {
                if (i, j) != (0, k) && !d.has_arc(path[i], path[j]) {
                    return Some((path.clone(), (i, j)));
                }
            }
        }
    }
    let last = path[k];
    for &w in &out[last] {
        // acyclic, so w cannot already be on the path
        path.push(w);
        if let Some(found) = extend_paths(d, out, path) {
            return Some(found);
        }
        path.pop();
    }
    None
}

/// Acyclic and shortcut-free.
pub fn is_semi_transitive(d: &Orientation) -> bool {
    match find_shortcut(d) {
        Ok(found) => found.is_none(),
        Err(_) => false,
    }
}
