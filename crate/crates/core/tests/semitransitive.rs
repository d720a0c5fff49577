mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordrep::generators::*;
use wordrep::search::{
    decide_word_representable, enumerate_completions, find_semi_transitive, search, SearchOptions,
};
use wordrep::shortcut::find_shortcut_bruteforce;
use wordrep::words::find_uniform_word;
use wordrep::{
    find_shortcut, is_semi_transitive, Graph, Orientation, OrientationError, PartialOrientation,
};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn letters4(g: Graph) -> Graph {
    g.relabel(|l| ["a", "b", "c", "d"][l.parse::<usize>().unwrap() - 1].to_string())
        .unwrap()
}

#[test]
fn acyclicity_examples() {
    let tri =
        Orientation::from_arcs(complete(3).unwrap(), [("1", "2"), ("2", "3"), ("3", "1")]).unwrap();
    assert!(!tri.is_acyclic());
    for n in 1..=6 {
        let t = Orientation::from_fn(complete(n).unwrap(), |_, _| true);
        assert!(t.is_acyclic());
        assert!(is_semi_transitive(&t));
    }
    let e = Orientation::from_fn(empty(0), |_, _| true);
    assert_eq!(e.topological_order(), Some(vec![]));
    assert!(!is_semi_transitive(&tri));
}

#[test]
fn shortcut_examples() {
    let g = letters4(complete(4).unwrap());
    let trans = Orientation::from_arcs(
        g,
        [
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("a", "d"),
            ("a", "c"),
            ("b", "d"),
        ],
    )
    .unwrap();
    assert_eq!(find_shortcut(&trans).unwrap(), None);
    let g = Graph::new(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")],
    )
    .unwrap();
    let sc = Orientation::from_arcs(g, [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")]).unwrap();
    let w = find_shortcut(&sc).unwrap().unwrap();
    let (i, j) = w.missing_pair();
    let pair = (w.path()[i].as_str(), w.path()[j].as_str());
    assert!(pair == ("a", "c") || pair == ("b", "d"));
    assert!(find_shortcut_bruteforce(&sc, false).unwrap().is_some());
}

#[test]
fn restriction_examples() {
    let t = Orientation::from_fn(complete(4).unwrap(), |_, _| true);
    assert_eq!(t.restrict(t.base().labels()).unwrap(), t);
    for drop in 1..=4 {
        let keep: Vec<String> = (1..=4)
            .filter(|&i| i != drop)
            .map(|i| i.to_string())
            .collect();
        let r = t.restrict(&keep).unwrap();
        assert_eq!(r.arc_count(), 3);
        assert!(is_semi_transitive(&r));
        assert_eq!(r.topological_order().unwrap(), vec![0, 1, 2]);
    }
    assert!(matches!(t.restrict(["9"]), Err(OrientationError::Graph(_))));
}

#[test]
fn decision_examples() {
    let c5 = decide_word_representable(&cycle(5).unwrap(), &opts()).unwrap();
    assert!(c5.is_representable() && c5.verify());
    assert!(!decide_word_representable(&graph_a(), &opts())
        .unwrap()
        .is_representable());
    let mu5 = mycielski(&cycle(5).unwrap()).unwrap();
    assert!(!decide_word_representable(&mu5, &opts())
        .unwrap()
        .is_representable());
    let lk4 = line_graph(&complete(4).unwrap()).unwrap();
    let o = find_semi_transitive(&lk4, None, &opts()).unwrap().unwrap();
    assert!(is_semi_transitive(&o));
    assert!(
        find_semi_transitive(&line_graph(&k4_prime()).unwrap(), None, &opts())
            .unwrap()
            .is_none()
    );
    assert!(
        find_semi_transitive(&line_graph(&w5_prime()).unwrap(), None, &opts())
            .unwrap()
            .is_none()
    );
}

/// The four-vertex configuration with `a -> b`, `b -> c`, `cd` and `da` free,
/// no `ac` edge, and `bd` absent, directed either way, or free.
fn square_configuration(bd: Option<Option<(&str, &str)>>) -> PartialOrientation {
    let mut edges = vec![("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")];
    if bd.is_some() {
        edges.push(("b", "d"));
    }
    let g = Graph::new(["a", "b", "c", "d"], edges).unwrap();
    let mut arcs = vec![("a", "b"), ("b", "c")];
    if let Some(Some(arc)) = bd {
        arcs.push(arc);
    }
    PartialOrientation::with_arcs(g, arcs).unwrap()
}

#[test]
fn square_configuration_has_one_completion() {
    for bd in [None, Some(Some(("b", "d"))), Some(Some(("d", "b")))] {
        let p = square_configuration(bd);
        let all = enumerate_completions(&p, 16, false).unwrap();
        assert_eq!(all.len(), 1, "{bd:?}");
        assert!(all[0].has_arc_labels("a", "d") && all[0].has_arc_labels("d", "c"));
    }
    // with bd left free, both directions of bd survive but cd and da agree
    let all = enumerate_completions(&square_configuration(Some(None)), 16, false).unwrap();
    assert_eq!(all.len(), 2);
    assert!(all
        .iter()
        .all(|o| o.has_arc_labels("a", "d") && o.has_arc_labels("d", "c")));
}

#[test]
fn completions_match_brute_force_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let n = rng.random_range(3..=6);
        let g = common::random_graph(&mut rng, n, 0.6);
        if g.edge_count() > 12 {
            continue;
        }
        // fix a random subset of edges to a random acyclic direction
        let mut p = PartialOrientation::new(g.clone());
        for (u, v) in g.edge_labels() {
            if rng.random_bool(0.3) {
                let (t, h) = if u < v { (u, v) } else { (v, u) };
                p.fix(t, h).unwrap();
            }
        }
        let expected: Vec<Orientation> = common::all_orientations(&g)
            .filter(|o| p.is_extended_by(o) && common::naive_acyclic(o))
            .filter(|o| find_shortcut_bruteforce(o, false).unwrap().is_none())
            .collect();
        let mut got = enumerate_completions(&p, usize::MAX, false).unwrap();
        let key = |o: &Orientation| o.to_arc_lines();
        got.sort_by_key(key);
        let mut expected = expected;
        expected.sort_by_key(key);
        assert_eq!(got, expected);
    }
}

#[test]
fn shortcut_detectors_agree_on_small_graphs() {
    let mut checked = 0;
    for n in 1..=5 {
        for g in common::nonisomorphic_graphs(n) {
            for o in common::all_orientations(&g) {
                if !common::naive_acyclic(&o) {
                    assert_eq!(find_shortcut(&o), Err(OrientationError::Cyclic));
                    continue;
                }
                let fast = find_shortcut(&o).unwrap();
                let slow = find_shortcut_bruteforce(&o, false).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "{o:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn decisions_agree_with_uniform_words_on_small_graphs() {
    for n in 1..=5 {
        for g in common::nonisomorphic_graphs(n) {
            let by_orientation = decide_word_representable(&g, &opts())
                .unwrap()
                .is_representable();
            let by_word = find_uniform_word(&g, 3, false).unwrap().is_some();
            assert_eq!(by_orientation, by_word, "{g:?}");
        }
    }
}

/// Semi-transitive orientations found by the search on random graphs.
fn corpus(count: usize, max_n: usize, seed: u64) -> Vec<Orientation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.random_range(3..=max_n);
        let g = common::random_graph(&mut rng, n, 0.5);
        if g.edge_count() > 20 {
            continue;
        }
        if let Some(o) = find_semi_transitive(&g, None, &opts()).unwrap() {
            out.push(o);
        }
    }
    out
}

#[test]
fn reversal_closure() {
    for o in corpus(40, 9, 22) {
        assert!(is_semi_transitive(&o));
        assert!(is_semi_transitive(&o.reversed()));
    }
}

#[test]
fn hereditary_closure() {
    for o in corpus(12, 9, 23) {
        let labels = o.base().labels().to_vec();
        for mask in 0u32..(1 << labels.len()) {
            let keep: Vec<&String> = labels
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, l)| l)
                .collect();
            assert!(is_semi_transitive(&o.restrict(keep).unwrap()));
        }
    }
}

#[test]
fn search_results_are_sound_and_complete_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..40 {
        let n = rng.random_range(3..=6);
        let g = common::random_graph(&mut rng, n, 0.6);
        if g.edge_count() > 11 {
            continue;
        }
        let found = find_semi_transitive(&g, None, &opts()).unwrap();
        let exists = common::all_orientations(&g).any(|o| {
            common::naive_acyclic(&o) && find_shortcut_bruteforce(&o, false).unwrap().is_none()
        });
        assert_eq!(found.is_some(), exists);
        if let Some(o) = found {
            assert!(is_semi_transitive(&o));
        }
    }
}

#[test]
fn parallel_search_matches_single_worker() {
    for g in [
        line_graph(&w5_prime()).unwrap(),
        mycielski(&cycle(5).unwrap()).unwrap(),
        graph_a(),
        line_graph(&complete(4).unwrap()).unwrap(),
        cycle(7).unwrap(),
    ] {
        let one = search(&g, None, &SearchOptions::with_workers(1)).unwrap();
        for workers in [2, 3, 8] {
            let many = search(&g, None, &SearchOptions::with_workers(workers)).unwrap();
            assert_eq!(one.orientation, many.orientation);
            if one.orientation.is_none() {
                assert_eq!(one.branches_explored, many.branches_explored);
            }
            assert_eq!(many.per_worker.len(), workers);
        }
    }
}

#[test]
fn repeated_runs_are_identical() {
    let g = mycielski(&cycle(5).unwrap()).unwrap();
    let a = serde_json::to_string(&decide_word_representable(&g, &opts()).unwrap()).unwrap();
    let b = serde_json::to_string(&decide_word_representable(&g, &opts()).unwrap()).unwrap();
    assert_eq!(a, b);
}

fn arb_orientation(max_n: usize) -> impl Strategy<Value = Orientation> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(0u8..3, pairs),
                proptest::collection::vec(0..n, n),
            )
        })
        .prop_map(|(n, edges, rank)| {
            // edges oriented by a random ranking (acyclic), with ties broken by index
            let ls = common::labels(n);
            let mut list = Vec::new();
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if edges[bit] > 0 {
                        list.push((ls[u].clone(), ls[v].clone()));
                    }
                    bit += 1;
                }
            }
            let g = Graph::new(&ls, list).unwrap();
            Orientation::from_fn(g, |u, v| (rank[u], u) < (rank[v], v))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn detectors_agree_on_random_dags(o in arb_orientation(8)) {
        let fast = find_shortcut(&o).unwrap();
        let slow = find_shortcut_bruteforce(&o, false).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
    }

    #[test]
    fn acyclicity_matches_naive(o in arb_orientation(7), flips in proptest::collection::vec(any::<bool>(), 21)) {
        let mut flips = flips.into_iter();
        let mixed = Orientation::from_fn(o.base().clone(), |u, v| o.has_arc(u, v) ^ flips.next().unwrap_or(false));
        prop_assert_eq!(mixed.is_acyclic(), common::naive_acyclic(&mixed));
        prop_assert_eq!(o.is_acyclic(), true);
    }

    #[test]
    fn semi_transitive_implies_acyclic(o in arb_orientation(7)) {
        if is_semi_transitive(&o) {
            prop_assert!(o.is_acyclic());
        }
    }
}
