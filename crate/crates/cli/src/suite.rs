//! The reproduction suite: fifteen checks, each a yes/no claim about the
//! library's constructions with a time budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordrep::generators::{complete, cycle, graph_a, k4_prime, line_graph, mycielski, w5_prime};
use wordrep::mu_line::{
    check_level_clauses, compare_arcs, drawn_arcs_n2, level_sets, line_of_mu, orientation_d,
    rook_orientation,
};
use wordrep::search::{decide_word_representable, enumerate_completions};
use wordrep::shortcut::find_shortcut_bruteforce;
use wordrep::words::statement_law_violations;
use wordrep::{
    are_isomorphic, find_embedding, find_shortcut, is_semi_transitive, Certificate, EdgeLabel,
    EmbeddingMode, Graph, Orientation, PartialOrientation, SearchOptions, Word,
};

/// Groups of claims selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Scope {
    All,
    /// The line graph of K4'.
    LineK4Prime,
    /// The line graph of W5'.
    LineW5Prime,
    /// The orientation D of L(mu(C_{2n+1})) and rook orientations.
    MuLine,
    /// Level sets and reachability clauses of D.
    LevelSets,
    /// Statement laws and word invariants.
    WordLaws,
    /// The four-vertex square with two free edges.
    ForcedSquare,
    /// Mycielski graphs, complete line graphs and graph A.
    RelatedGraphs,
    /// Fast shortcut detection against path enumeration.
    Oracles,
}

pub struct Claim {
    pub id: &'static str,
    pub scope: Scope,
    pub description: &'static str,
    pub budget: Duration,
    check: fn(&SearchOptions) -> Result<String, String>,
}

#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub within_budget: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl ClaimResult {
    pub fn ok(&self) -> bool {
        self.passed && self.within_budget
    }

    /// The deterministic part of the result: no timing.
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("{mark} {} {}: {}", self.id, self.description, self.detail)
    }
}

impl Claim {
    pub fn run(&self, opts: &SearchOptions) -> ClaimResult {
        let start = Instant::now();
        let out = (self.check)(opts);
        let elapsed = start.elapsed();
        let (passed, detail) = match out {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        ClaimResult {
            id: self.id,
            description: self.description,
            passed,
            within_budget: elapsed <= self.budget,
            detail,
            elapsed,
            budget: self.budget,
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn claims() -> Vec<Claim> {
    use Scope::*;
    vec![
        Claim { id: "01", scope: LineK4Prime, budget: secs(10), check: line_k4_prime,
            description: "L(K4') is not word-representable" },
        Claim { id: "02", scope: LineW5Prime, budget: secs(60), check: line_w5_prime,
            description: "L(W5') is not word-representable" },
        Claim { id: "03", scope: MuLine, budget: secs(70), check: d_semi_transitive,
            description: "D is semi-transitive for n = 2..8 and matches the n = 2 drawing" },
        Claim { id: "04", scope: MuLine, budget: secs(70), check: d_acyclic_and_shortcut_free,
            description: "D is acyclic and shortcut-free for n = 2..8" },
        Claim { id: "05", scope: RelatedGraphs, budget: secs(600), check: mycielski_cycles,
            description: "mu(C3) and mu(C5) are not word-representable" },
        Claim { id: "06", scope: RelatedGraphs, budget: secs(30), check: line_w5_prime_in_line_mu_c3,
            description: "L(W5') is an induced subgraph of L(mu(C3))" },
        Claim { id: "07", scope: RelatedGraphs, budget: secs(30), check: line_k4_prime_in_line_k5,
            description: "K4' lies in K5 and L(K4') is an induced subgraph of L(K5)" },
        Claim { id: "08", scope: RelatedGraphs, budget: secs(5), check: line_k4,
            description: "L(K4) is word-representable" },
        Claim { id: "09", scope: RelatedGraphs, budget: secs(60), check: graph_a_chain,
            description: "graph A is not word-representable and contains W5'" },
        Claim { id: "10", scope: ForcedSquare, budget: secs(1), check: forced_square,
            description: "the square configuration has one completion, with a -> d and d -> c" },
        Claim { id: "11", scope: WordLaws, budget: secs(60), check: statement_laws,
            description: "statement laws hold on 500 random uniform words" },
        Claim { id: "12", scope: Oracles, budget: secs(300), check: shortcut_oracles,
            description: "fast and brute-force shortcut detection agree on all graphs up to 5 vertices" },
        Claim { id: "13", scope: MuLine, budget: secs(5), check: rook_orientations,
            description: "rook orientations are semi-transitive for m, n <= 6" },
        Claim { id: "14", scope: LevelSets, budget: secs(30), check: level_set_clauses,
            description: "level sets match their closed form and every reachability clause holds for n = 2..8" },
        Claim { id: "15", scope: WordLaws, budget: secs(30), check: word_invariance,
            description: "reversal and cyclic-shift invariance on 300 (word, graph) pairs" },
    ]
}

pub fn claims_in(scope: Scope) -> Vec<Claim> {
    claims()
        .into_iter()
        .filter(|c| scope == Scope::All || c.scope == scope)
        .collect()
}

fn decide(g: &Graph, opts: &SearchOptions) -> Result<Certificate, String> {
    let cert = decide_word_representable(g, opts).map_err(|e| e.to_string())?;
    if !cert.verify() {
        return Err("certificate failed re-verification".into());
    }
    Ok(cert)
}

fn expect_non_representable(name: &str, g: &Graph, opts: &SearchOptions) -> Result<String, String> {
    match decide(g, opts)? {
        Certificate::NonRepresentable { exhaustion } => Ok(format!(
            "{name}: {} vertices, {} edges, {} branches exhausted",
            g.vertex_count(),
            g.edge_count(),
            exhaustion.branches_explored
        )),
        Certificate::Representable { witness } => Err(format!(
            "{name}: found semi-transitive orientation {:?}",
            witness.arc_labels().collect::<Vec<_>>()
        )),
    }
}

fn line_k4_prime(opts: &SearchOptions) -> Result<String, String> {
    let g = line_graph(&k4_prime()).map_err(|e| e.to_string())?;
    expect_non_representable("L(K4')", &g, opts)
}

fn line_w5_prime(opts: &SearchOptions) -> Result<String, String> {
    let g = line_graph(&w5_prime()).map_err(|e| e.to_string())?;
    expect_non_representable("L(W5')", &g, opts)
}

fn d(n: usize) -> Result<Orientation, String> {
    orientation_d(n).map_err(|e| e.to_string())
}

fn d_semi_transitive(_: &SearchOptions) -> Result<String, String> {
    for n in 2..=8 {
        if !is_semi_transitive(&d(n)?) {
            return Err(format!("D is not semi-transitive for n = {n}"));
        }
    }
    let diff = compare_arcs(&d(2)?, &drawn_arcs_n2());
    if diff.is_exact() {
        return Ok("semi-transitive for n = 2..8; n = 2 arc set equals the drawing".into());
    }
    let show = |v: &[(String, String)]| {
        v.iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Err(format!(
        "semi-transitive for n = 2..8, but the n = 2 drawing differs: only in D [{}]; only in drawing [{}]; drawn twice [{}]",
        show(&diff.only_in_orientation),
        show(&diff.only_in_list),
        show(&diff.duplicates)
    ))
}

fn d_acyclic_and_shortcut_free(_: &SearchOptions) -> Result<String, String> {
    let mut parts = Vec::new();
    for n in 2..=8 {
        let o = d(n)?;
        let acyclic = o.is_acyclic();
        let shortcut = if acyclic {
            find_shortcut(&o).map_err(|e| e.to_string())?
        } else {
            None
        };
        if !acyclic {
            return Err(format!("n = {n}: not acyclic"));
        }
        if let Some(w) = shortcut {
            return Err(format!("n = {n}: shortcut {w}"));
        }
        parts.push(format!("n={n} acyclic, no shortcut"));
    }
    Ok(parts.join("; "))
}

fn mycielski_cycles(opts: &SearchOptions) -> Result<String, String> {
    let mut out = Vec::new();
    for (k, name) in [(3, "mu(C3)"), (5, "mu(C5)")] {
        let g = mycielski(&cycle(k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        out.push(expect_non_representable(name, &g, opts)?);
    }
    Ok(out.join("; "))
}

fn embed(pattern: &Graph, host: &Graph, mode: EmbeddingMode, what: &str) -> Result<String, String> {
    match find_embedding(pattern, host, mode) {
        Some(e) if e.is_valid(pattern, host) => Ok(format!("{what}: {mode} embedding found")),
        Some(_) => Err(format!("{what}: embedding failed re-verification")),
        None => Err(format!("{what}: no {mode} embedding")),
    }
}

fn line_w5_prime_in_line_mu_c3(_: &SearchOptions) -> Result<String, String> {
    let pattern = line_graph(&w5_prime()).map_err(|e| e.to_string())?;
    let host = line_of_mu(1).map_err(|e| e.to_string())?;
    embed(
        &pattern,
        &host,
        EmbeddingMode::Induced,
        "L(W5') into L(mu(C3))",
    )
}

fn line_k4_prime_in_line_k5(_: &SearchOptions) -> Result<String, String> {
    let k5 = complete(5).map_err(|e| e.to_string())?;
    let a = embed(&k4_prime(), &k5, EmbeddingMode::Subgraph, "K4' into K5")?;
    let lk = line_graph(&k4_prime()).map_err(|e| e.to_string())?;
    let l5 = line_graph(&k5).map_err(|e| e.to_string())?;
    let b = embed(&lk, &l5, EmbeddingMode::Induced, "L(K4') into L(K5)")?;
    Ok(format!("{a}; {b}"))
}

fn line_k4(opts: &SearchOptions) -> Result<String, String> {
    let g = line_graph(&complete(4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let cert = decide(&g, opts)?;
    match cert.witness() {
        Some(w) if is_semi_transitive(w) => {
            Ok(format!("verified witness with {} arcs", w.arc_count()))
        }
        _ => Err(format!("verdict {}", cert.verdict())),
    }
}

fn graph_a_chain(opts: &SearchOptions) -> Result<String, String> {
    let a = graph_a();
    let verdict = expect_non_representable("graph A", &a, opts)?;
    let sub = embed(&w5_prime(), &a, EmbeddingMode::Subgraph, "W5' into A")?;
    let lw = line_graph(&w5_prime()).map_err(|e| e.to_string())?;
    let la = line_graph(&a).map_err(|e| e.to_string())?;
    let ind = embed(&lw, &la, EmbeddingMode::Induced, "L(W5') into L(A)")?;
    Ok(format!("{verdict}; {sub}; {ind}"))
}

/// `a -> b -> c` fixed, `cd` and `da` free, no `ac`; `bd` absent or fixed.
pub fn square_configuration(bd: Option<(&str, &str)>, with_bd: bool) -> PartialOrientation {
    let mut edges = vec![("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")];
    if with_bd {
        edges.push(("b", "d"));
    }
    let g = Graph::new(["a", "b", "c", "d"], edges).expect("fixed graph");
    let mut arcs = vec![("a", "b"), ("b", "c")];
    arcs.extend(bd);
    PartialOrientation::with_arcs(g, arcs).expect("fixed arcs")
}

fn forced_square(_: &SearchOptions) -> Result<String, String> {
    let variants = [
        ("no bd", None, false),
        ("b -> d", Some(("b", "d")), true),
        ("d -> b", Some(("d", "b")), true),
    ];
    let mut out = Vec::new();
    for (name, bd, with_bd) in variants {
        let p = square_configuration(bd, with_bd);
        let all = enumerate_completions(&p, 16, false).map_err(|e| e.to_string())?;
        if all.len() != 1 {
            return Err(format!("{name}: {} completions", all.len()));
        }
        if !(all[0].has_arc_labels("a", "d") && all[0].has_arc_labels("d", "c")) {
            return Err(format!(
                "{name}: completion {:?}",
                all[0].arc_labels().collect::<Vec<_>>()
            ));
        }
        out.push(format!("{name}: 1 completion"));
    }
    Ok(out.join("; "))
}

fn random_uniform_word(rng: &mut ChaCha8Rng, letters: usize, k: usize) -> Word {
    let mut seq: Vec<String> = (0..letters)
        .flat_map(|i| std::iter::repeat_n(char::from(b'a' + i as u8).to_string(), k))
        .collect();
    seq.shuffle(rng);
    Word::linear(seq)
}

fn alphabet_of(w: &Word) -> Vec<String> {
    let set: BTreeSet<&String> = w.letters().iter().collect();
    set.into_iter().cloned().collect()
}

fn statement_laws(_: &SearchOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut triples = 0usize;
    for _ in 0..500 {
        let letters = rng.random_range(3..=7);
        let k = rng.random_range(2..=3);
        let w = random_uniform_word(&mut rng, letters, k);
        let bad = statement_law_violations(&w).map_err(|e| e.to_string())?;
        if let Some(first) = bad.first() {
            return Err(format!("{} violations, first: {first}", bad.len()));
        }
        let g = w
            .represented_graph(&alphabet_of(&w))
            .map_err(|e| e.to_string())?;
        triples += (0..g.vertex_count())
            .map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2)
            .sum::<usize>();
    }
    Ok(format!(
        "500 words, {triples} neighbour pairs checked, 0 violations"
    ))
}

fn shortcut_oracles(_: &SearchOptions) -> Result<String, String> {
    let mut checked = 0usize;
    let mut classes = 0usize;
    for n in 1..=5 {
        for g in nonisomorphic_graphs(n) {
            classes += 1;
            let m = g.edge_count();
            for mask in 0..(1u64 << m) {
                let mut e = 0;
                let o = Orientation::from_fn(g.clone(), |_, _| {
                    let f = mask >> e & 1 == 1;
                    e += 1;
                    f
                });
                if !o.is_acyclic() {
                    continue;
                }
                let fast = find_shortcut(&o).map_err(|e| e.to_string())?;
                let slow = find_shortcut_bruteforce(&o, false).map_err(|e| e.to_string())?;
                if fast.is_some() != slow.is_some() {
                    return Err(format!(
                        "disagreement on {:?}: fast {:?}, brute force {:?}",
                        o.arc_labels().collect::<Vec<_>>(),
                        fast.map(|w| w.to_string()),
                        slow.map(|w| w.to_string())
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{classes} graphs, {checked} acyclic orientations, 0 disagreements"
    ))
}

/// One graph per isomorphism class on vertices `1..=n`.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut reps: Vec<Graph> = Vec::new();
    for mask in 0..(1u64 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(u, v))| (labels[u].clone(), labels[v].clone()));
        let g = Graph::new(labels.clone(), edges).expect("valid graph");
        if !reps.iter().any(|r| are_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

fn rook_orientations(_: &SearchOptions) -> Result<String, String> {
    for m in 1..=6 {
        for n in 1..=6 {
            let r = rook_orientation(m, n).map_err(|e| e.to_string())?;
            if !is_semi_transitive(&r) {
                return Err(format!("{m} x {n} is not semi-transitive"));
            }
        }
    }
    Ok("36 rook orientations semi-transitive".into())
}

/// Rows `L_0..L_{2n+1}` and columns `L'_1..L'_{2n+1}` from their closed form.
fn closed_form_levels(n: usize) -> (Vec<BTreeSet<EdgeLabel>>, Vec<BTreeSet<EdgeLabel>>) {
    let m = 2 * n + 1;
    let a = EdgeLabel::a;
    let mut rows = vec![(1..=m).map(|j| a(0, j)).collect::<BTreeSet<_>>()];
    rows.push([a(1, 2), a(1, m)].into());
    for i in 2..=2 * n {
        rows.push([a(i, i - 1), a(i, i + 1)].into());
    }
    rows.push([a(m, 1), a(m, 2 * n)].into());
    let mut cols = vec![[a(0, 1), a(2, 1), a(m, 1)].into()];
    for j in 2..=2 * n {
        cols.push([a(0, j), a(j - 1, j), a(j + 1, j)].into());
    }
    cols.push([a(0, m), a(1, m), a(2 * n, m)].into());
    (rows, cols)
}

fn level_set_clauses(_: &SearchOptions) -> Result<String, String> {
    for n in 1..=8 {
        let ls = level_sets(n).map_err(|e| e.to_string())?;
        let rows: Vec<BTreeSet<EdgeLabel>> = ls
            .rows
            .iter()
            .map(|r| r.iter().copied().collect())
            .collect();
        let cols: Vec<BTreeSet<EdgeLabel>> = ls
            .columns
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        if (rows, cols) != closed_form_levels(n) {
            return Err(format!("level sets differ from the closed form at n = {n}"));
        }
    }
    let mut failures = Vec::new();
    for n in 2..=8 {
        let report = check_level_clauses(n).map_err(|e| e.to_string())?;
        for id in report.failing() {
            let ce = report
                .clause(id)
                .and_then(|c| c.counterexample.clone())
                .map(|p| p.join(" -> "))
                .unwrap_or_default();
            failures.push(format!("n={n} {id} [{ce}]"));
        }
    }
    if failures.is_empty() {
        Ok("level sets match for n = 1..8; all clauses hold for n = 2..8".into())
    } else {
        Err(format!(
            "level sets match for n = 1..8; failing clauses: {}",
            failures.join("; ")
        ))
    }
}

fn word_invariance(_: &SearchOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut represented = 0usize;
    let mut shifts = 0usize;
    for i in 0..300 {
        let letters = rng.random_range(2..=7);
        let k = rng.random_range(1..=3);
        let w = random_uniform_word(&mut rng, letters, k);
        let alphabet = alphabet_of(&w);
        let mut g = w.represented_graph(&alphabet).map_err(|e| e.to_string())?;
        if i % 3 == 2 {
            // flip one pair so the word no longer represents the graph
            let (a, b) = (&alphabet[0], &alphabet[1]);
            let mut edges: Vec<(&str, &str)> = g
                .edge_labels()
                .filter(|&(u, v)| !(u == a && v == b))
                .collect();
            if !g.has_edge(a, b) {
                edges.push((a, b));
            }
            g = Graph::new(&alphabet, edges).map_err(|e| e.to_string())?;
        }
        let fwd = w.represents(&g).map_err(|e| e.to_string())?;
        if fwd != w.reversed().represents(&g).map_err(|e| e.to_string())? {
            return Err(format!("reversal changes the verdict for {w}"));
        }
        if fwd {
            represented += 1;
            for j in 0..w.len() {
                if !w
                    .cyclic_shift(j)
                    .represents(&g)
                    .map_err(|e| e.to_string())?
                {
                    return Err(format!("shift by {j} breaks {w}"));
                }
                shifts += 1;
            }
        }
    }
    Ok(format!(
        "300 pairs ({represented} represented), {shifts} shifts checked"
    ))
}
