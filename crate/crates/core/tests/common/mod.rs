#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use wordrep::{are_isomorphic, Graph, Orientation, Word};

pub fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Every labeled graph on `1..=n` whose edge set is the bitmask `mask`
/// over the pairs in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let ls = labels(n);
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((ls[u].clone(), ls[v].clone()));
            }
            bit += 1;
        }
    }
    Graph::new(ls, edges).unwrap()
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut reps: Vec<Graph> = Vec::new();
    for mask in 0..(1u64 << pairs) {
        let g = graph_from_mask(n, mask);
        if !reps.iter().any(|r| are_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

/// All `2^|E|` orientations of `g`.
pub fn all_orientations(g: &Graph) -> impl Iterator<Item = Orientation> + '_ {
    let m = g.edge_count();
    (0..(1u64 << m)).map(move |mask| {
        let mut e = 0;
        Orientation::from_fn(g.clone(), |_, _| {
            let f = mask >> e & 1 == 1;
            e += 1;
            f
        })
    })
}

/// Reachability by repeated relaxation, independent of the library.
pub fn naive_reach(d: &Orientation) -> Vec<Vec<bool>> {
    let g = d.base();
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (u, v) in d.arcs() {
        r[u][v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

pub fn naive_acyclic(d: &Orientation) -> bool {
    let r = naive_reach(d);
    (0..r.len()).all(|v| !r[v][v])
}

/// Random graph on `1..=n` with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let ls = labels(n);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((ls[u].clone(), ls[v].clone()));
            }
        }
    }
    Graph::new(ls, edges).unwrap()
}

/// Random `k`-uniform word over `a, b, c, …` (`letters` of them).
pub fn random_uniform_word<R: Rng>(rng: &mut R, letters: usize, k: usize) -> Word {
    let alphabet: Vec<String> = (0..letters)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    let mut seq: Vec<String> = alphabet
        .iter()
        .flat_map(|l| std::iter::repeat_n(l.clone(), k))
        .collect();
    seq.shuffle(rng);
    Word::linear(seq)
}

pub fn alphabet_of(w: &Word) -> Vec<String> {
    let mut a: Vec<String> = w.letters().to_vec();
    a.sort();
    a.dedup();
    a
}

/// Alternation by explicit restriction.
pub fn naive_alternates(w: &Word, a: &str, b: &str) -> bool {
    let r: Vec<&String> = w.letters().iter().filter(|l| *l == a || *l == b).collect();
    r.windows(2).all(|p| p[0] != p[1])
}

/// Cyclic statement by rotating the word to start at each pivot and cutting
/// it into gaps.
pub fn naive_statement(w: &[String], forall: bool, a: &str, b: &str, c: &str) -> bool {
    let start = w.iter().position(|l| l == a).unwrap();
    let mut rotated: Vec<&str> = w[start..]
        .iter()
        .chain(&w[..start])
        .map(|s| s.as_str())
        .collect();
    rotated.push(a);
    let gaps: Vec<&[&str]> = rotated[1..].split(|l| *l == a).collect();
    // `split` yields one trailing empty slice after the closing pivot
    let gaps = &gaps[..gaps.len() - 1];
    let good = |gap: &[&str]| {
        gap.iter()
            .enumerate()
            .any(|(i, l)| *l == b && gap[i + 1..].contains(&c))
    };
    if forall {
        gaps.iter().all(|g| good(g))
    } else {
        gaps.iter().any(|g| good(g))
    }
}

/// Violations of the two laws relating a uniform word to the graph it
/// represents: with `ab, ac` edges, a non-edge `bc` needs both `∃(abca)` and
/// `∃(acba)`, and an edge `bc` needs exactly one of `∀(abca)`, `∀(acba)`.
pub fn law_violations(word: &Word) -> Vec<String> {
    use wordrep::Statement;
    let alphabet = alphabet_of(word);
    let g = word.represented_graph(&alphabet).unwrap();
    let cyc = word.as_cyclic();
    let eval = |s: Statement| cyc.eval(&s).unwrap();
    let mut bad = Vec::new();
    for a in &alphabet {
        for b in &alphabet {
            for c in &alphabet {
                if a == b || a == c || b >= c || !g.has_edge(a, b) || !g.has_edge(a, c) {
                    continue;
                }
                if g.has_edge(b, c) {
                    let one = eval(Statement::forall(a, b, c).unwrap());
                    let two = eval(Statement::forall(a, c, b).unwrap());
                    if one == two {
                        bad.push(format!("{word}: edge {b}{c}, forall({a},{b},{c})={one}, forall({a},{c},{b})={two}"));
                    }
                } else {
                    let one = eval(Statement::exists(a, b, c).unwrap());
                    let two = eval(Statement::exists(a, c, b).unwrap());
                    if !(one && two) {
                        bad.push(format!("{word}: non-edge {b}{c}, exists({a},{b},{c})={one}, exists({a},{c},{b})={two}"));
                    }
                }
            }
        }
    }
    bad
}
