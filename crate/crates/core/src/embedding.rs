//! Subgraph and induced-subgraph embeddings by backtracking.
//!
//! The graphs this crate deals with have a few dozen vertices at most, so a
//! plain backtracking search with degree and adjacency filtering is enough.

use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingMode {
    /// Edges of the pattern map to edges of the host.
    Subgraph,
    /// Additionally, non-edges map to non-edges.
    Induced,
}

impl fmt::Display for EmbeddingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingMode::Subgraph => "subgraph",
            EmbeddingMode::Induced => "induced",
        })
    }
}

/// An injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub mode: EmbeddingMode,
    /// `(pattern label, host label)` in pattern vertex order.
    pub mapping: Vec<(String, String)>,
}

impl Embedding {
    pub fn image_of(&self, pattern_label: &str) -> Option<&str> {
        self.mapping
            .iter()
            .find(|(p, _)| p == pattern_label)
            .map(|(_, h)| h.as_str())
    }

    /// Re-checks injectivity and the mode's edge conditions.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.mapping.len() != pattern.vertex_count() {
            return false;
        }
        let mut image = vec![usize::MAX; pattern.vertex_count()];
        let mut used = BitSet::new(host.vertex_count());
        for (p, h) in &self.mapping {
            let (Some(pi), Some(hi)) = (pattern.index_of(p), host.index_of(h)) else {
                return false;
            };
            if used.contains(hi) || image[pi] != usize::MAX {
                return false;
            }
            used.insert(hi);
            image[pi] = hi;
        }
        let n = pattern.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                let host_edge = host.adjacent(image[u], image[v]);
                let pattern_edge = pattern.adjacent(u, v);
                if pattern_edge && !host_edge {
                    return false;
                }
                if self.mode == EmbeddingMode::Induced && !pattern_edge && host_edge {
                    return false;
                }
            }
        }
        true
    }
}

/// Searches for an embedding of `pattern` into `host`.
///
/// Returns `None` only after the search space is exhausted. The result is
/// deterministic: pattern vertices are placed most-connected first and host
/// candidates are tried in host vertex order.
pub fn find_embedding(pattern: &Graph, host: &Graph, mode: EmbeddingMode) -> Option<Embedding> {
    let np = pattern.vertex_count();
    if np > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    let order = placement_order(pattern);
    let mut image = vec![usize::MAX; np];
    let mut used = BitSet::new(host.vertex_count());
    let search = Search {
        pattern,
        host,
        mode,
        order: &order,
    };
    if !search.extend(0, &mut image, &mut used) {
        return None;
    }
    let emb = Embedding {
        mode,
        mapping: (0..np)
            .map(|p| {
                (
                    pattern.label(p).to_string(),
                    host.label(image[p]).to_string(),
                )
            })
            .collect(),
    };
    debug_assert!(emb.is_valid(pattern, host));
    Some(emb)
}

/// Isomorphism test: a bijective induced embedding.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && g.degree_sequence() == h.degree_sequence()
        && find_embedding(g, h, EmbeddingMode::Induced).is_some()
}

/// Highest degree first, then repeatedly the vertex with the most already
/// placed neighbours (ties: degree, then position).
fn placement_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = BitSet::new(n);
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| {
                let links = g.neighbors(v).intersection(&placed).len();
                (links, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    order
}

struct Search<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    mode: EmbeddingMode,
    order: &'a [usize],
}

impl Search<'_> {
    fn extend(&self, depth: usize, image: &mut [usize], used: &mut BitSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let need = self.pattern.degree(p);
        for h in 0..self.host.vertex_count() {
            if used.contains(h) || self.host.degree(h) < need {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&q| {
                let pe = self.pattern.adjacent(p, q);
                let he = self.host.adjacent(h, image[q]);
                match self.mode {
                    EmbeddingMode::Subgraph => !pe || he,
                    EmbeddingMode::Induced => pe == he,
                }
            });
            if !consistent {
                continue;
            }
            image[p] = h;
            used.insert(h);
            if self.extend(depth + 1, image, used) {
                return true;
            }
            used.remove(h);
            image[p] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn k4_prime_sits_in_k5() {
        let e = find_embedding(&k4_prime(), &complete(5).unwrap(), EmbeddingMode::Subgraph)
            .expect("K5 contains K4'");
        assert!(e.is_valid(&k4_prime(), &complete(5).unwrap()));
        // but not as an induced subgraph: K5 has no non-edges
        assert!(
            find_embedding(&k4_prime(), &complete(5).unwrap(), EmbeddingMode::Induced).is_none()
        );
    }

    #[test]
    fn k4_not_in_c5() {
        assert!(find_embedding(
            &complete(4).unwrap(),
            &cycle(5).unwrap(),
            EmbeddingMode::Subgraph
        )
        .is_none());
    }

    #[test]
    fn isomorphism_basics() {
        let c5 = cycle(5).unwrap();
        let relabeled = Graph::new(
            ["p", "q", "r", "s", "t"],
            [("p", "r"), ("r", "t"), ("t", "q"), ("q", "s"), ("s", "p")],
        )
        .unwrap();
        assert!(are_isomorphic(&c5, &relabeled));
        assert!(!are_isomorphic(
            &cycle(6).unwrap(),
            &complete_bipartite(3, 3).unwrap()
        ));
        let c7 = cycle(7).unwrap();
        assert!(are_isomorphic(&line_graph(&c7).unwrap(), &c7));
        // same degree sequence, different graphs: C6 vs two triangles
        let two_triangles = Graph::new(
            ["1", "2", "3", "4", "5", "6"],
            [
                ("1", "2"),
                ("2", "3"),
                ("1", "3"),
                ("4", "5"),
                ("5", "6"),
                ("4", "6"),
            ],
        )
        .unwrap();
        assert!(!are_isomorphic(&cycle(6).unwrap(), &two_triangles));
    }

    #[test]
    fn induced_path_in_cycle() {
        let e = find_embedding(
            &path(4).unwrap(),
            &cycle(5).unwrap(),
            EmbeddingMode::Induced,
        );
        assert!(e.is_some());
        assert!(find_embedding(
            &path(5).unwrap(),
            &cycle(5).unwrap(),
            EmbeddingMode::Induced
        )
        .is_none());
    }

    #[test]
    fn invalid_embedding_detected() {
        let e = Embedding {
            mode: EmbeddingMode::Subgraph,
            mapping: vec![("1".into(), "1".into()), ("2".into(), "3".into())],
        };
        assert!(!e.is_valid(&complete(2).unwrap(), &path(3).unwrap()));
    }
}
