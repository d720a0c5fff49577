//! Words over vertex labels.
//!
//! Alternation and representation read a word left to right ([`View::Linear`]).
//! The `∃`/`∀` statements read it as written on a circle ([`View::Cyclic`]).
//! The view is carried by the word and checked, never guessed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{check_label, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter `{0}` does not occur in the word")]
    LetterAbsent(String),
    #[error("operation needs a {expected:?} word")]
    WrongView { expected: View },
    #[error("pivot `{pivot}` occurs {count} time(s); statements need at least two occurrences")]
    PivotTooRare { pivot: String, count: usize },
    #[error("statement letters must be pairwise distinct")]
    RepeatedLetter,
    #[error("malformed statement `{0}` (expected e.g. `exists(a,b,c)`)")]
    MalformedStatement(String),
    #[error("word is not k-uniform with k >= 2")]
    NotUniform,
    #[error("uniform-word search limited to {max_vertices} vertices and k <= {max_k} (got {vertices} vertices, k = {k})")]
    ScaleGuard {
        vertices: usize,
        k: usize,
        max_vertices: usize,
        max_k: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum View {
    Linear,
    Cyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<String>,
    view: View,
}

impl Word {
    pub fn new<I, S>(letters: I, view: View) -> Word
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Word {
            letters: letters.into_iter().map(Into::into).collect(),
            view,
        }
    }

    pub fn linear<I, S>(letters: I) -> Word
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Word::new(letters, View::Linear)
    }

    pub fn cyclic<I, S>(letters: I) -> Word
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Word::new(letters, View::Cyclic)
    }

    /// One letter per character, e.g. `Word::from_chars("abcabc")`.
    pub fn from_chars(s: &str) -> Word {
        Word::linear(s.chars().map(String::from))
    }

    /// Whitespace-separated labels, linear view.
    pub fn parse(s: &str) -> Result<Word, WordError> {
        let letters: Vec<&str> = s.split_whitespace().collect();
        for l in &letters {
            check_label(l)?;
        }
        Ok(Word::linear(letters))
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn view(&self) -> View {
        self.view
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_cyclic(&self) -> Word {
        Word {
            letters: self.letters.clone(),
            view: View::Cyclic,
        }
    }

    pub fn as_linear(&self) -> Word {
        Word {
            letters: self.letters.clone(),
            view: View::Linear,
        }
    }

    /// Occurrence count per letter.
    pub fn counts(&self) -> BTreeMap<&str, usize> {
        let mut m = BTreeMap::new();
        for l in &self.letters {
            *m.entry(l.as_str()).or_insert(0) += 1;
        }
        m
    }

    pub fn occurrences(&self, letter: &str) -> usize {
        self.letters.iter().filter(|l| *l == letter).count()
    }

    /// Subsequence of letters in `keep`; the view is preserved.
    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .filter(|l| keep.iter().any(|k| k.as_ref() == l.as_str()))
                .cloned()
                .collect(),
            view: self.view,
        }
    }

    /// `Some(k)` when every letter occurs exactly `k` times.
    pub fn uniformity(&self) -> Option<usize> {
        let counts = self.counts();
        let mut it = counts.values();
        let k = *it.next()?;
        it.all(|&c| c == k).then_some(k)
    }

    /// Rotation `uv -> vu` with `|u| = k mod len`.
    pub fn cyclic_shift(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word {
            letters,
            view: self.view,
        }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            letters,
            view: self.view,
        }
    }

    fn require_view(&self, view: View) -> Result<(), WordError> {
        if self.view == view {
            Ok(())
        } else {
            Err(WordError::WrongView { expected: view })
        }
    }

    /// Whether `a` and `b` alternate: the restriction to `{a, b}` is
    /// `abab…` or `baba…`, of any length including 0 and 1.
    pub fn alternates(&self, a: &str, b: &str) -> Result<bool, WordError> {
        self.require_view(View::Linear)?;
        Ok(alternates_in(&self.letters, a, b))
    }

    /// Graph on `vertices` with an edge exactly where the letters alternate.
    pub fn represented_graph<S: AsRef<str>>(&self, vertices: &[S]) -> Result<Graph, WordError> {
        self.require_view(View::Linear)?;
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_ref(), i))
            .collect();
        let n = vertices.len();
        let mut seq = Vec::with_capacity(self.len());
        let mut present = vec![false; n];
        for l in &self.letters {
            if let Some(&i) = index.get(l.as_str()) {
                seq.push(i);
                present[i] = true;
            }
        }
        if let Some(i) = present.iter().position(|p| !p) {
            return Err(WordError::LetterAbsent(vertices[i].as_ref().to_string()));
        }
        // last[a][b]: which of a, b was seen last; broken[a][b]: repeat seen
        let mut last = vec![usize::MAX; n * n];
        let mut broken = vec![false; n * n];
        for &x in &seq {
            for y in 0..n {
                if y == x {
                    continue;
                }
                let (lo, hi) = (x.min(y), x.max(y));
                let slot = lo * n + hi;
                if last[slot] == x {
                    broken[slot] = true;
                }
                last[slot] = x;
            }
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !broken[u * n + v] {
                    edges.push((vertices[u].as_ref(), vertices[v].as_ref()));
                }
            }
        }
        Ok(Graph::new(
            vertices.iter().map(|v| v.as_ref().to_string()),
            edges,
        )?)
    }

    /// Whether this word represents `g` (every vertex of `g` must occur).
    pub fn represents(&self, g: &Graph) -> Result<bool, WordError> {
        Ok(self.represented_graph(g.labels())? == *g)
    }

    /// Truth of a cyclic `∃`/`∀` statement.
    ///
    /// The pivot's occurrences cut the circle into gaps (bounding pivots
    /// excluded). A gap satisfies `(a b c a)` when some occurrence of `b`
    /// in it precedes some occurrence of `c` in it.
    pub fn eval(&self, s: &Statement) -> Result<bool, WordError> {
        self.require_view(View::Cyclic)?;
        let pivots: Vec<usize> = self
            .letters
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == s.pivot)
            .map(|(i, _)| i)
            .collect();
        if pivots.len() < 2 {
            return Err(WordError::PivotTooRare {
                pivot: s.pivot.clone(),
                count: pivots.len(),
            });
        }
        let len = self.len();
        let gap_ok = |start: usize, end: usize| {
            // positions strictly between start and end, walking round the circle
            let mut seen_left = false;
            let mut i = start + 1;
            while i < end {
                let l = &self.letters[i % len];
                if *l == s.left {
                    seen_left = true;
                } else if *l == s.right && seen_left {
                    return true;
                }
                i += 1;
            }
            false
        };
        let mut gaps = pivots
            .windows(2)
            .map(|w| (w[0], w[1]))
            .chain(std::iter::once((pivots[pivots.len() - 1], pivots[0] + len)));
        Ok(match s.kind {
            Quantifier::Exists => gaps.any(|(a, b)| gap_ok(a, b)),
            Quantifier::Forall => gaps.all(|(a, b)| gap_ok(a, b)),
        })
    }
}

pub(crate) fn alternates_in<S: AsRef<str>>(letters: &[S], a: &str, b: &str) -> bool {
    let mut prev: Option<&str> = None;
    for l in letters {
        let l = l.as_ref();
        if l == a || l == b {
            if prev == Some(l) {
                return false;
            }
            prev = Some(l);
        }
    }
    true
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// `∃(abca)` / `∀(abca)` with pivot `a`, left `b`, right `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Statement {
    kind: Quantifier,
    pivot: String,
    left: String,
    right: String,
}

impl Statement {
    pub fn new(
        kind: Quantifier,
        pivot: impl Into<String>,
        left: impl Into<String>,
        right: impl Into<String>,
    ) -> Result<Statement, WordError> {
        let (pivot, left, right) = (pivot.into(), left.into(), right.into());
        if pivot == left || pivot == right || left == right {
            return Err(WordError::RepeatedLetter);
        }
        Ok(Statement {
            kind,
            pivot,
            left,
            right,
        })
    }

    pub fn exists(a: &str, b: &str, c: &str) -> Result<Statement, WordError> {
        Statement::new(Quantifier::Exists, a, b, c)
    }

    pub fn forall(a: &str, b: &str, c: &str) -> Result<Statement, WordError> {
        Statement::new(Quantifier::Forall, a, b, c)
    }

    pub fn kind(&self) -> Quantifier {
        self.kind
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match self.kind {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        };
        write!(f, "{q}({},{},{})", self.pivot, self.left, self.right)
    }
}

impl FromStr for Statement {
    type Err = WordError;

    /// Parses `exists(a,b,c)` or `forall(a,b,c)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::MalformedStatement(s.to_string());
        let s_trim = s.trim();
        let open = s_trim.find('(').ok_or_else(bad)?;
        let kind = match &s_trim[..open] {
            "exists" | "E" => Quantifier::Exists,
            "forall" | "A" => Quantifier::Forall,
            _ => return Err(bad()),
        };
        let inner = s_trim[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [a, b, c] if !a.is_empty() && !b.is_empty() && !c.is_empty() => {
                Statement::new(kind, *a, *b, *c)
            }
            _ => Err(bad()),
        }
    }
}

/// Checks the two statement laws tying a uniform word to the graph it
/// represents, for every vertex `a` with neighbours `b`, `c`:
///
/// - `bc` not an edge: both `exists(a,b,c)` and `exists(a,c,b)` hold;
/// - `bc` an edge: exactly one of `forall(a,b,c)`, `forall(a,c,b)` holds.
///
/// Returns one line per violated triple. Only uniform words are accepted.
pub fn statement_law_violations(word: &Word) -> Result<Vec<String>, WordError> {
    if word.uniformity().is_none_or(|k| k < 2) {
        return Err(WordError::NotUniform);
    }
    let mut alphabet: Vec<&str> = word.letters.iter().map(String::as_str).collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    let g = word.as_linear().represented_graph(&alphabet)?;
    let cyc = word.as_cyclic();
    let mut bad = Vec::new();
    for &a in &alphabet {
        for (i, &b) in alphabet.iter().enumerate() {
            for &c in &alphabet[i + 1..] {
                if a == b || a == c || !g.has_edge(a, b) || !g.has_edge(a, c) {
                    continue;
                }
                if g.has_edge(b, c) {
                    let one = cyc.eval(&Statement::forall(a, b, c)?)?;
                    let two = cyc.eval(&Statement::forall(a, c, b)?)?;
                    if one == two {
                        bad.push(format!("{word}: edge {b}-{c} with forall({a},{b},{c}) = forall({a},{c},{b}) = {one}"));
                    }
                } else {
                    let one = cyc.eval(&Statement::exists(a, b, c)?)?;
                    let two = cyc.eval(&Statement::exists(a, c, b)?)?;
                    if !(one && two) {
                        bad.push(format!("{word}: non-edge {b}-{c} with exists({a},{b},{c}) = {one}, exists({a},{c},{b}) = {two}"));
                    }
                }
            }
        }
    }
    Ok(bad)
}

/// Vertex and `k` limits for [`find_uniform_word`] unless overridden.
pub const UNIFORM_SEARCH_MAX_VERTICES: usize = 8;
pub const UNIFORM_SEARCH_MAX_K: usize = 3;

/// Smallest-`k` uniform word representing `g`, for `k` in `1..=k_max`.
///
/// Exhaustive enumeration with the first letter fixed to the first vertex
/// (any cyclic shift of a representing uniform word also represents `g`).
/// Prefixes are cut as soon as an edge pair stops alternating or a non-edge
/// pair can no longer avoid alternating.
pub fn find_uniform_word(
    g: &Graph,
    k_max: usize,
    guard_override: bool,
) -> Result<Option<Word>, WordError> {
    let n = g.vertex_count();
    if !guard_override && (n > UNIFORM_SEARCH_MAX_VERTICES || k_max > UNIFORM_SEARCH_MAX_K) {
        return Err(WordError::ScaleGuard {
            vertices: n,
            k: k_max,
            max_vertices: UNIFORM_SEARCH_MAX_VERTICES,
            max_k: UNIFORM_SEARCH_MAX_K,
        });
    }
    if n == 0 {
        return Ok(Some(Word::linear(Vec::<String>::new())));
    }
    for k in 1..=k_max {
        if let Some(seq) = UniformSearch::new(g, k).run() {
            let w = Word::linear(seq.iter().map(|&v| g.label(v).to_string()));
            debug_assert_eq!(w.represents(g), Ok(true));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

const NOBODY: usize = usize::MAX;

struct UniformSearch<'a> {
    g: &'a Graph,
    n: usize,
    k: usize,
    remaining: Vec<usize>,
    /// per unordered pair: which letter of the pair was placed last
    last: Vec<usize>,
    /// per unordered pair: a repeat has been seen
    broken: Vec<bool>,
    seq: Vec<usize>,
}

impl<'a> UniformSearch<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.vertex_count();
        UniformSearch {
            g,
            n,
            k,
            remaining: vec![k; n],
            last: vec![NOBODY; n * n],
            broken: vec![false; n * n],
            seq: Vec::with_capacity(n * k),
        }
    }

    fn slot(&self, x: usize, y: usize) -> usize {
        x.min(y) * self.n + x.max(y)
    }

    /// A non-edge pair still alternating whose remaining letters cannot
    /// produce a repeat.
    fn forced_to_alternate(&self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.remaining[x], self.remaining[y]);
        match self.last[self.slot(x, y)] {
            NOBODY => rx <= 1 && ry <= 1,
            l if l == x => rx == 0 && ry <= 1,
            _ => ry == 0 && rx <= 1,
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if !self.g.adjacent(x, y) && self.forced_to_alternate(x, y) {
                    return None;
                }
            }
        }
        if self.place(0).is_some() && self.dfs() {
            Some(self.seq)
        } else {
            None
        }
    }

    /// Places `x` and returns the undo log; on failure the state is left
    /// untouched.
    fn place(&mut self, x: usize) -> Option<Vec<(usize, usize, bool)>> {
        let n = self.n;
        for y in 0..n {
            if y == x {
                continue;
            }
            let s = self.slot(x, y);
            if self.last[s] == x && self.g.adjacent(x, y) {
                return None;
            }
        }
        let mut undo = Vec::with_capacity(n);
        self.remaining[x] -= 1;
        for y in 0..n {
            if y == x {
                continue;
            }
            let s = self.slot(x, y);
            undo.push((s, self.last[s], self.broken[s]));
            if self.last[s] == x {
                self.broken[s] = true;
            }
            self.last[s] = x;
        }
        let dead = (0..n).any(|y| {
            y != x
                && !self.g.adjacent(x, y)
                && !self.broken[self.slot(x, y)]
                && self.forced_to_alternate(x, y)
        });
        if dead {
            self.remaining[x] += 1;
            for (s, l, b) in undo {
                self.last[s] = l;
                self.broken[s] = b;
            }
            return None;
        }
        self.seq.push(x);
        Some(undo)
    }

    fn unplace(&mut self, x: usize, undo: Vec<(usize, usize, bool)>) {
        self.seq.pop();
        self.remaining[x] += 1;
        for (s, l, b) in undo {
            self.last[s] = l;
            self.broken[s] = b;
        }
    }

    fn dfs(&mut self) -> bool {
        if self.seq.len() == self.n * self.k {
            return true;
        }
        for x in 0..self.n {
            if self.remaining[x] == 0 {
                continue;
            }
            let Some(undo) = self.place(x) else {
                continue;
            };
            if self.dfs() {
                return true;
            }
            self.unplace(x, undo);
        }
        false
    }
}
