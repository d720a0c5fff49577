//! Standard families, a few named small graphs, and the line-graph and
//! Mycielski constructions.

use crate::graph::{Graph, GraphError};

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn out_of_range(what: &str) -> GraphError {
    GraphError::SizeOutOfRange(what.to_string())
}

/// Cycle `C_n` on `1..=n`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(out_of_range("cycle needs n >= 3"));
    }
    let pairs = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_parts(numbered(n), pairs))
}

/// Path `P_n` on `1..=n` (n vertices, n - 1 edges).
pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(out_of_range("path needs n >= 1"));
    }
    let pairs = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_parts(numbered(n), pairs))
}

/// Complete graph `K_n` on `1..=n`.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(out_of_range("complete graph needs n >= 1"));
    }
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    Ok(Graph::from_parts(numbered(n), pairs))
}

/// Edgeless graph on `1..=n`.
pub fn empty(n: usize) -> Graph {
    Graph::from_parts(numbered(n), Vec::new())
}

/// Complete bipartite `K_{m,n}` with sides `1..=m` and `1'..=n'`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    if m < 1 || n < 1 {
        return Err(out_of_range("complete bipartite graph needs m, n >= 1"));
    }
    let mut labels = numbered(m);
    labels.extend((1..=n).map(|j| format!("{j}'")));
    let mut pairs = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            pairs.push((i, m + j));
        }
    }
    Ok(Graph::from_parts(labels, pairs))
}

/// `K_4` on `1..=4` with a pendant vertex `y` hanging off `1`.
pub fn k4_prime() -> Graph {
    Graph::new(
        ["1", "2", "3", "4", "y"],
        [
            ("1", "2"),
            ("1", "3"),
            ("1", "4"),
            ("2", "3"),
            ("2", "4"),
            ("3", "4"),
            ("1", "y"),
        ],
    )
    .unwrap()
}

/// The 5-cycle `v1 … v5` plus a hub `h` joined to `v1, v2, v3, v4` but not
/// to `v5`.
///
/// Its nine edges are conventionally named `e2 = v1v2`, `e3 = v2v3`,
/// `e4 = v3v4`, `e5 = v4v5`, `e1 = v1v5` and `bi = vi h`; see
/// [`w5_prime_edge_name`].
pub fn w5_prime() -> Graph {
    Graph::new(
        ["v1", "v2", "v3", "v4", "v5", "h"],
        [
            ("v1", "v2"),
            ("v2", "v3"),
            ("v3", "v4"),
            ("v4", "v5"),
            ("v1", "v5"),
            ("v1", "h"),
            ("v2", "h"),
            ("v3", "h"),
            ("v4", "h"),
        ],
    )
    .unwrap()
}

/// The `e*`/`b*` name of an edge of [`w5_prime`], given its endpoints in
/// either order.
pub fn w5_prime_edge_name(u: &str, v: &str) -> Option<&'static str> {
    let (a, b) = if u <= v { (u, v) } else { (v, u) };
    Some(match (a, b) {
        ("v1", "v5") => "e1",
        ("v1", "v2") => "e2",
        ("v2", "v3") => "e3",
        ("v3", "v4") => "e4",
        ("v4", "v5") => "e5",
        ("h", "v1") => "b1",
        ("h", "v2") => "b2",
        ("h", "v3") => "b3",
        ("h", "v4") => "b4",
        _ => return None,
    })
}

/// Line graph of [`w5_prime`] with vertices renamed `e1 … e5, b1 … b4`.
pub fn line_w5_prime() -> Graph {
    let g = w5_prime();
    let names: Vec<&'static str> = g
        .edge_labels()
        .map(|(u, v)| w5_prime_edge_name(u, v).unwrap())
        .collect();
    let l = line_graph(&g).unwrap();
    let mut k = 0;
    l.relabel(|_| {
        k += 1;
        names[k - 1].to_string()
    })
    .unwrap()
}

/// A 7-vertex, 12-edge graph containing [`w5_prime`]: `5` plays the cycle
/// vertex opposite the hub and `6` the hub itself; `0` is joined to
/// `2, 3, 4, 5`.
pub fn graph_a() -> Graph {
    Graph::new(
        ["1", "2", "3", "4", "5", "6", "0"],
        [
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("1", "5"),
            ("4", "5"),
            ("1", "6"),
            ("3", "6"),
            ("4", "6"),
            ("2", "0"),
            ("3", "0"),
            ("4", "0"),
            ("5", "0"),
        ],
    )
    .unwrap()
}

/// Mycielski graph: the original vertices, a primed shadow `x'` of each
/// vertex `x`, and an apex `0`.
///
/// Edges are the original ones, `0 – x'` for every `x`, and `u – v'`,
/// `v – u'` for every original edge `uv`. The result has `2|V| + 1`
/// vertices and `3|E| + |V|` edges.
pub fn mycielski(g: &Graph) -> Result<Graph, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::NoVertices);
    }
    for l in g.labels() {
        if l == "0" || l.ends_with('\'') {
            return Err(GraphError::ReservedLabel(l.clone()));
        }
    }
    let mut labels: Vec<String> = g.labels().to_vec();
    labels.extend(g.labels().iter().map(|l| format!("{l}'")));
    labels.push("0".to_string());
    let apex = 2 * n;
    let mut pairs = Vec::with_capacity(3 * g.edge_count() + n);
    for &(u, v) in g.edges() {
        pairs.push((u, v));
        pairs.push((u, n + v));
        pairs.push((v, n + u));
    }
    for x in 0..n {
        pairs.push((n + x, apex));
    }
    Ok(Graph::from_parts(labels, pairs))
}

/// Vertex name used by [`line_graph`] for the edge `{u, v}`.
pub fn line_vertex_label(u: &str, v: &str) -> String {
    format!("l({u},{v})")
}

/// Line graph: one vertex per edge (named `l(u,v)` with `u` before `v` in
/// host order, in canonical edge order), two vertices adjacent iff their
/// edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    if g.edge_count() == 0 {
        return Err(GraphError::NoEdges);
    }
    let labels = g
        .edge_labels()
        .map(|(u, v)| line_vertex_label(u, v))
        .collect();
    // edges incident to each host vertex form a clique
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut pairs = Vec::new();
    for star in &incident {
        for (k, &e) in star.iter().enumerate() {
            for &f in &star[k + 1..] {
                pairs.push((e, f));
            }
        }
    }
    Ok(Graph::from_parts(labels, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn choose2(d: usize) -> usize {
        d * d.saturating_sub(1) / 2
    }

    #[test]
    fn family_sizes() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert_eq!(complete_bipartite(2, 3).unwrap().edge_count(), 6);
        assert_eq!(path(1).unwrap().edge_count(), 0);
        assert_eq!(path(4).unwrap().edge_count(), 3);
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert!(complete_bipartite(0, 3).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn k4_prime_shape() {
        let g = k4_prime();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.degree_sequence(), vec![4, 3, 3, 3, 1]);
        assert_eq!(
            g.induced_subgraph(["1", "2", "3", "4"]).unwrap(),
            complete(4).unwrap()
        );
    }

    #[test]
    fn w5_prime_shape() {
        let g = w5_prime();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.degree_sequence(), vec![4, 3, 3, 3, 3, 2]);
        assert!(!g.has_edge("h", "v5"));
        let rim = g
            .induced_subgraph(["v1", "v2", "v3", "v4", "v5"])
            .unwrap()
            .relabel(|l| l.trim_start_matches('v').to_string())
            .unwrap();
        assert_eq!(rim, cycle(5).unwrap());
    }

    #[test]
    fn named_line_w5_prime() {
        let l = line_w5_prime();
        assert_eq!(l.vertex_count(), 9);
        for (a, b) in [
            ("b1", "b2"),
            ("b1", "b4"),
            ("b3", "b4"),
            ("e1", "e2"),
            ("e1", "b1"),
        ] {
            assert!(l.has_edge(a, b), "{a}-{b}");
        }
        for (a, b) in [("e1", "b2"), ("e2", "b3"), ("e3", "b1"), ("e5", "b1")] {
            assert!(!l.has_edge(a, b), "{a}-{b}");
        }
    }

    #[test]
    fn graph_a_shape() {
        let g = graph_a();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.degree_sequence(), vec![4, 4, 4, 3, 3, 3, 3]);
    }

    #[test]
    fn mycielski_sizes() {
        let m5 = mycielski(&cycle(5).unwrap()).unwrap();
        assert_eq!((m5.vertex_count(), m5.edge_count()), (11, 20));
        let m3 = mycielski(&cycle(3).unwrap()).unwrap();
        assert_eq!((m3.vertex_count(), m3.edge_count()), (7, 12));
        assert_eq!(
            mycielski(&cycle(5).unwrap())
                .unwrap()
                .induced_subgraph(["1", "2", "3", "4", "5"])
                .unwrap(),
            cycle(5).unwrap()
        );
    }

    #[test]
    fn mycielski_of_k2_is_a_five_cycle() {
        // 1-2, 1-2', 2-1', 1'-0, 2'-0: the cycle 1 2 1' 0 2' 1
        let m = mycielski(&complete(2).unwrap()).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (5, 5));
        assert!(m.degree_sequence().iter().all(|&d| d == 2));
        for (a, b) in [
            ("1", "2"),
            ("2", "1'"),
            ("1'", "0"),
            ("0", "2'"),
            ("2'", "1"),
        ] {
            assert!(m.has_edge(a, b));
        }
    }

    #[test]
    fn mycielski_rejects_reserved_labels() {
        let g = Graph::new(["0", "1"], [("0", "1")]).unwrap();
        assert!(matches!(mycielski(&g), Err(GraphError::ReservedLabel(_))));
        let g = Graph::new(["a'", "b"], [("a'", "b")]).unwrap();
        assert!(matches!(mycielski(&g), Err(GraphError::ReservedLabel(_))));
        assert_eq!(mycielski(&empty(0)).unwrap_err(), GraphError::NoVertices);
    }

    #[test]
    fn line_graph_sizes() {
        let g = k4_prime();
        let l = line_graph(&g).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (7, 15));
        assert_eq!(
            line_graph(&path(3).unwrap()).unwrap().edge_count(),
            1,
            "two incident edges"
        );
        assert_eq!(line_graph(&empty(3)).unwrap_err(), GraphError::NoEdges);
        let m = mycielski(&cycle(5).unwrap()).unwrap();
        let lm = line_graph(&m).unwrap();
        let expected: usize = (0..m.vertex_count()).map(|v| choose2(m.degree(v))).sum();
        assert_eq!((lm.vertex_count(), lm.edge_count()), (20, expected));
        assert_eq!(expected, 55);
    }

    #[test]
    fn line_graph_names_follow_host_order() {
        let l = line_graph(&path(3).unwrap()).unwrap();
        assert_eq!(l.labels(), &["l(1,2)", "l(2,3)"]);
    }
}
