mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wordrep::generators::*;
use wordrep::io::{parse_graph, to_edge_list, to_json};
use wordrep::{are_isomorphic, find_embedding, EmbeddingMode, Graph, GraphError};

fn choose2(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mask = bits
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &b)| m | (u64::from(b) << i));
            common::graph_from_mask(n, mask)
        })
    })
}

/// Triangle test by brute force over vertex triples.
fn naive_has_triangle(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).any(|a| {
        (a + 1..n)
            .any(|b| (b + 1..n).any(|c| g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)))
    })
}

#[test]
fn build_graph_examples() {
    let k2 = Graph::new(["a", "b"], [("a", "b")]).unwrap();
    assert_eq!(k2.edge_count(), 1);
    let single = Graph::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
    assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
    assert!(matches!(
        Graph::new(["a", "b"], [("a", "a")]),
        Err(GraphError::Loop(_))
    ));
    assert!(matches!(
        Graph::new(["a", "a"], Vec::<(&str, &str)>::new()),
        Err(GraphError::DuplicateLabel(_))
    ));
    assert!(matches!(
        Graph::new(["a", "b"], [("a", "c")]),
        Err(GraphError::UnknownVertex(_))
    ));
    assert!(matches!(
        Graph::new(["a", "b"], [("a", "b"), ("b", "a")]),
        Err(GraphError::DuplicateEdge(..))
    ));
}

#[test]
fn canonical_edges_serialize_identically() {
    let g1 = Graph::new(["x", "y", "z"], [("z", "x"), ("x", "y")]).unwrap();
    let g2 = Graph::new(["x", "y", "z"], [("y", "x"), ("x", "z")]).unwrap();
    assert_eq!(g1, g2);
    assert_eq!(to_json(&g1), to_json(&g2));
    assert_eq!(to_edge_list(&g1), to_edge_list(&g2));
}

#[test]
fn family_edge_counts() {
    assert_eq!(cycle(5).unwrap().edge_count(), 5);
    assert_eq!(complete(4).unwrap().edge_count(), 6);
    assert_eq!(complete_bipartite(2, 3).unwrap().edge_count(), 6);
    assert_eq!(path(6).unwrap().edge_count(), 5);
    assert!(cycle(2).is_err() && complete(0).is_err() && path(0).is_err());
    assert!(complete_bipartite(0, 3).is_err());
}

#[test]
fn k4_prime_shape() {
    let g = k4_prime();
    assert_eq!(g.edge_count(), 7);
    assert_eq!(g.degree_sequence(), vec![4, 3, 3, 3, 1]);
    let core = g.induced_subgraph(["1", "2", "3", "4"]).unwrap();
    assert!(are_isomorphic(&core, &complete(4).unwrap()));
    assert_eq!(g.neighbors(g.index_of("y").unwrap()).len(), 1);
    assert!(g.has_edge("1", "y"));
}

#[test]
fn w5_prime_shape() {
    let g = w5_prime();
    assert_eq!(g.edge_count(), 9);
    // tally incidences of the nine named edges
    let mut deg = std::collections::BTreeMap::new();
    for (u, v) in g.edge_labels() {
        *deg.entry(u.to_string()).or_insert(0) += 1;
        *deg.entry(v.to_string()).or_insert(0) += 1;
    }
    let mut seq: Vec<usize> = deg.values().copied().collect();
    seq.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(seq, vec![4, 3, 3, 3, 3, 2]);
    assert!(!g.has_edge("h", "v5"));
    let rim: Vec<&str> = g
        .labels()
        .iter()
        .map(String::as_str)
        .filter(|l| *l != "h")
        .collect();
    assert!(are_isomorphic(
        &g.induced_subgraph(rim).unwrap(),
        &cycle(5).unwrap()
    ));
    let names: Vec<&str> = g
        .edge_labels()
        .map(|(u, v)| w5_prime_edge_name(u, v).unwrap())
        .collect();
    for want in ["e1", "e2", "e3", "e4", "e5", "b1", "b2", "b3", "b4"] {
        assert!(names.contains(&want), "{want}");
    }
}

#[test]
fn graph_a_shape() {
    let g = graph_a();
    assert_eq!(g.edge_count(), 12);
    let listed = [
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
    ];
    let mut tally = std::collections::HashMap::new();
    for (u, v) in listed {
        assert!(g.has_edge(u, v));
        *tally.entry(u).or_insert(0usize) += 1;
        *tally.entry(v).or_insert(0usize) += 1;
    }
    let mut seq: Vec<usize> = tally.values().copied().collect();
    seq.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(seq, vec![4, 4, 4, 3, 3, 3, 3]);
    assert_eq!(g.degree_sequence(), seq);
    let e = find_embedding(&w5_prime(), &g, EmbeddingMode::Subgraph).expect("W5' inside A");
    assert!(e.is_valid(&w5_prime(), &g));
}

#[test]
fn mycielski_examples() {
    let m5 = mycielski(&cycle(5).unwrap()).unwrap();
    assert_eq!((m5.vertex_count(), m5.edge_count()), (11, 20));
    let m3 = mycielski(&cycle(3).unwrap()).unwrap();
    assert_eq!((m3.vertex_count(), m3.edge_count()), (7, 12));
    // the 12 edges of the drawing of μ(C3)
    for (u, v) in [
        ("1", "2"),
        ("2", "3"),
        ("1", "3"),
        ("1", "2'"),
        ("1", "3'"),
        ("2", "1'"),
        ("2", "3'"),
        ("3", "1'"),
        ("3", "2'"),
        ("0", "1'"),
        ("0", "2'"),
        ("0", "3'"),
    ] {
        assert!(m3.has_edge(u, v), "{u}-{v}");
    }
    let m2 = mycielski(&complete(2).unwrap()).unwrap();
    assert!(are_isomorphic(&m2, &cycle(5).unwrap()));
    assert!(matches!(mycielski(&empty(0)), Err(GraphError::NoVertices)));
    let bad = Graph::new(["0", "1"], [("0", "1")]).unwrap();
    assert!(matches!(mycielski(&bad), Err(GraphError::ReservedLabel(_))));
    let primed = Graph::new(["1'", "1"], [("1'", "1")]).unwrap();
    assert!(matches!(
        mycielski(&primed),
        Err(GraphError::ReservedLabel(_))
    ));
}

#[test]
fn line_graph_examples() {
    let l = line_graph(&k4_prime()).unwrap();
    assert_eq!((l.vertex_count(), l.edge_count()), (7, 15));
    let expected: usize = k4_prime().degree_sequence().into_iter().map(choose2).sum();
    assert_eq!(expected, 15);
    assert!(are_isomorphic(
        &line_graph(&path(3).unwrap()).unwrap(),
        &complete(2).unwrap()
    ));
    for n in 3..=8 {
        let c = cycle(n).unwrap();
        assert!(are_isomorphic(&line_graph(&c).unwrap(), &c));
    }
    assert!(matches!(line_graph(&empty(3)), Err(GraphError::NoEdges)));
    assert!(l.labels().contains(&"l(1,y)".to_string()));
}

#[test]
fn induced_subgraph_examples() {
    let k4 = complete(4).unwrap();
    assert_eq!(
        k4.induced_subgraph(["1", "2", "3"]).unwrap(),
        complete(3).unwrap()
    );
    assert_eq!(k4.induced_subgraph(k4.labels()).unwrap(), k4);
    let p = cycle(5).unwrap().induced_subgraph(["2", "3", "4"]).unwrap();
    assert!(are_isomorphic(&p, &path(3).unwrap()));
    assert!(matches!(
        k4.induced_subgraph(["9"]),
        Err(GraphError::UnknownVertex(_))
    ));
}

#[test]
fn embedding_examples() {
    assert!(find_embedding(&k4_prime(), &complete(5).unwrap(), EmbeddingMode::Subgraph).is_some());
    let lw = line_graph(&w5_prime()).unwrap();
    let lm = line_graph(&mycielski(&cycle(3).unwrap()).unwrap()).unwrap();
    let e = find_embedding(&lw, &lm, EmbeddingMode::Induced).expect("L(W5') in L(μ(C3))");
    assert!(e.is_valid(&lw, &lm));
    assert!(find_embedding(
        &complete(4).unwrap(),
        &cycle(5).unwrap(),
        EmbeddingMode::Subgraph
    )
    .is_none());
}

#[test]
fn isomorphism_examples() {
    let c5 = cycle(5).unwrap();
    let renamed = c5.relabel(|l| format!("v{l}")).unwrap();
    assert!(are_isomorphic(&c5, &renamed));
    assert!(!are_isomorphic(
        &cycle(6).unwrap(),
        &complete_bipartite(3, 3).unwrap()
    ));
    let c7 = cycle(7).unwrap();
    assert!(are_isomorphic(&line_graph(&c7).unwrap(), &c7));
}

#[test]
fn mycielski_of_triangle_free_graphs_up_to_thirty_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for n in 2..=14 {
        for _ in 0..6 {
            let g = common::random_graph(&mut rng, n, 0.3);
            if naive_has_triangle(&g) {
                continue;
            }
            let m = mycielski(&g).unwrap();
            assert!(m.vertex_count() <= 30);
            assert!(!naive_has_triangle(&m));
            assert!(!m.has_triangle());
            checked += 1;
        }
    }
    for n in [4, 5, 7, 9, 11, 13] {
        let m = mycielski(&cycle(n).unwrap()).unwrap();
        assert!(!naive_has_triangle(&m), "μ(C{n})");
    }
    assert!(checked > 20);
}

proptest! {
    #[test]
    fn line_graph_counts(g in arb_graph(9)) {
        prop_assume!(g.edge_count() > 0);
        let l = line_graph(&g).unwrap();
        prop_assert_eq!(l.vertex_count(), g.edge_count());
        let expected: usize = (0..g.vertex_count()).map(|v| choose2(g.degree(v))).sum();
        prop_assert_eq!(l.edge_count(), expected);
    }

    #[test]
    fn mycielski_counts_and_original_inside(g in arb_graph(9)) {
        let m = mycielski(&g).unwrap();
        prop_assert_eq!(m.vertex_count(), 2 * g.vertex_count() + 1);
        prop_assert_eq!(m.edge_count(), 3 * g.edge_count() + g.vertex_count());
        prop_assert_eq!(m.induced_subgraph(g.labels()).unwrap(), g);
    }

    #[test]
    fn triangle_free_is_preserved(g in arb_graph(10)) {
        prop_assume!(!naive_has_triangle(&g));
        prop_assert!(!naive_has_triangle(&mycielski(&g).unwrap()));
    }

    #[test]
    fn subgraph_gives_induced_line_subgraph(g in arb_graph(7), keep in proptest::collection::vec(any::<bool>(), 21)) {
        // h: a spanning subgraph of g keeping a subset of its edges
        let kept: Vec<(&str, &str)> = g.edge_labels().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| e).collect();
        prop_assume!(!kept.is_empty());
        let h = Graph::new(g.labels(), kept).unwrap();
        let e = find_embedding(&h, &g, EmbeddingMode::Subgraph);
        prop_assert!(e.is_some());
        let (lh, lg) = (line_graph(&h).unwrap(), line_graph(&g).unwrap());
        let le = find_embedding(&lh, &lg, EmbeddingMode::Induced);
        prop_assert!(le.is_some_and(|le| le.is_valid(&lh, &lg)));
    }

    #[test]
    fn embeddings_are_sound(h in arb_graph(5), g in arb_graph(7)) {
        for mode in [EmbeddingMode::Subgraph, EmbeddingMode::Induced] {
            if let Some(e) = find_embedding(&h, &g, mode) {
                prop_assert!(e.is_valid(&h, &g));
            }
        }
    }

    #[test]
    fn text_and_json_roundtrip(g in arb_graph(8)) {
        prop_assert_eq!(parse_graph(&to_edge_list(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&to_json(&g)).unwrap(), g);
    }
}
