//! Exact extremal values at small `n` by depth-first branch and bound.
//!
//! All searches are single-threaded and deterministic. Candidates are tried
//! in a fixed order and only strict improvements replace the incumbent, so
//! the reported witness is the lexicographically least optimal one.
//! Budgets count search nodes; running out yields an inconclusive result
//! carrying the best incumbent found so far.

use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::Serialize;

use crate::coloring::{binomial, pair_count, Color, EdgeColoring, Pair};
use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, Uniformity};

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    /// The search space was exhausted; `value` is the extremal value.
    Exact,
    /// The node budget ran out; `value` is only the best incumbent.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Coloring(EdgeColoring),
    Hypergraph(MultiHypergraph),
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Extremal value when exact; incumbent value (if any) otherwise.
    pub value: Option<usize>,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
    /// Domain reductions applied, one line each.
    pub notes: Vec<String>,
}

impl SearchResult {
    pub fn is_exact(&self) -> bool {
        self.outcome == SearchOutcome::Exact
    }

    /// The value, only if the search completed.
    pub fn exact(&self) -> Option<usize> {
        self.value.filter(|_| self.is_exact())
    }
}

/// Upper limit on the precomputed pair lists of all `p`-sets.
pub const MAX_TRACKED_SETS: u64 = 4_000_000;

/// Minimum palette size of a `(p,q)`-coloring of `K_n`.
///
/// Pairs are colored in lexicographic order; a pair may only take a color
/// already used or the next fresh id, which quotients out color renaming.
/// A partial coloring is abandoned as soon as some `p`-set has more than
/// `C(p,2) - q` repeats among its decided pairs.
pub fn exact_f(n: usize, p: usize, q: usize, budget: u64) -> Result<SearchResult> {
    let pp = pair_count(p);
    if p < 2 || p > n {
        return Err(Error::range(format!("need 2 <= p <= n, got p = {p}, n = {n}")));
    }
    if q == 0 || q > pp {
        return Err(Error::range(format!("need 1 <= q <= C(p,2) = {pp}, got q = {q}")));
    }
    let m = pair_count(n);
    let tracked = m as u64 * binomial(n - 2, p - 2) * pp as u64;
    if tracked > MAX_TRACKED_SETS {
        return Err(Error::range(format!("n = {n}, p = {p} is too large for exhaustive search")));
    }
    let start = Instant::now();

    // for each pair, the p-sets through it as lists of their already-decided pairs
    let pairs: Vec<Pair> = Pair::all(n).collect();
    let mut windows: Vec<Vec<Vec<usize>>> = Vec::with_capacity(m);
    for (idx, pair) in pairs.iter().enumerate() {
        let others: Vec<usize> = (0..n).filter(|&x| !pair.contains(x)).collect();
        let sets = others
            .into_iter()
            .combinations(p - 2)
            .map(|mut rest| {
                rest.extend([pair.u(), pair.v()]);
                rest.sort_unstable();
                rest.iter()
                    .tuple_combinations()
                    .map(|(&a, &b)| Pair::new(a, b).index(n))
                    .filter(|&j| j < idx)
                    .collect()
            })
            .collect();
        windows.push(sets);
    }

    let mut f = ColorSearch {
        m,
        max_repeats: pp - q,
        windows,
        colors: vec![0; m],
        stamp: vec![0; m + 1],
        tick: 0,
        best: m + 1,
        best_colors: None,
        floor: q,
        nodes: 0,
        budget,
        aborted: false,
    };
    f.descend(0, 0);
    let stats = SearchStats {
        nodes_explored: f.nodes,
        elapsed: start.elapsed(),
    };
    let witness = f.best_colors.as_ref().map(|cs| {
        let mut it = cs.iter();
        Witness::Coloring(EdgeColoring::from_fn(n, |_| *it.next().expect("one color per pair")))
    });
    Ok(SearchResult {
        outcome: if f.aborted { SearchOutcome::Inconclusive } else { SearchOutcome::Exact },
        value: f.best_colors.as_ref().map(|_| f.best),
        witness,
        stats,
        notes: Vec::new(),
    })
}

struct ColorSearch {
    m: usize,
    max_repeats: usize,
    windows: Vec<Vec<Vec<usize>>>,
    colors: Vec<Color>,
    stamp: Vec<u64>,
    tick: u64,
    best: usize,
    best_colors: Option<Vec<Color>>,
    /// Any complete coloring uses at least this many colors.
    floor: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl ColorSearch {
    fn done(&self) -> bool {
        self.aborted || self.best <= self.floor
    }

    fn admissible(&mut self, idx: usize, c: Color) -> bool {
        for set in &self.windows[idx] {
            self.tick += 1;
            self.stamp[c as usize] = self.tick;
            let mut distinct = 1;
            for &j in set {
                let cj = self.colors[j] as usize;
                if self.stamp[cj] != self.tick {
                    self.stamp[cj] = self.tick;
                    distinct += 1;
                }
            }
            if set.len() + 1 - distinct > self.max_repeats {
                return false;
            }
        }
        true
    }

    fn descend(&mut self, idx: usize, used: usize) {
        if idx == self.m {
            if used < self.best {
                self.best = used;
                self.best_colors = Some(self.colors.clone());
            }
            return;
        }
        for c in 0..=used as Color {
            if self.done() {
                return;
            }
            let next_used = used.max(c as usize + 1);
            if next_used >= self.best {
                break;
            }
            if !self.admissible(idx, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return;
            }
            self.colors[idx] = c;
            self.descend(idx + 1, next_used);
        }
    }
}

/// `f(n,3,3)`: a `(3,3)`-coloring is exactly a proper edge coloring (two
/// adjacent same-colored edges close a triangle with at most two colors), so
/// this is the chromatic index of `K_n`.
pub fn chromatic_index_oracle(n: usize) -> Result<usize> {
    match n {
        0 | 1 => Err(Error::range(format!("need n >= 2, got {n}"))),
        _ if n.is_multiple_of(2) => Ok(n - 1),
        _ => Ok(n),
    }
}

const MAX_CANDIDATES: u64 = 20_000;

fn candidates(n: usize, r: usize) -> Result<Vec<u64>> {
    if n > 64 || binomial(n, r) > MAX_CANDIDATES {
        return Err(Error::range(format!("C({n},{r}) candidate edges is too many for exhaustive search")));
    }
    Ok((0..n)
        .combinations(r)
        .map(|e| e.iter().fold(0u64, |acc, &x| acc | 1 << x))
        .collect())
}

/// An `(s,k)`-configuration to avoid.
#[derive(Clone, Copy, Debug)]
struct Forbidden {
    s: u32,
    k: usize,
}

/// Does some choice of `need` entries of `chosen` bring `union` to at most `s` vertices?
fn completes(chosen: &[u64], from: usize, need: usize, union: u64, s: u32) -> bool {
    if union.count_ones() > s {
        return false;
    }
    if need == 0 {
        return true;
    }
    if chosen.len() < from + need {
        return false;
    }
    (from..=chosen.len() - need).any(|i| completes(chosen, i + 1, need - 1, union | chosen[i], s))
}

struct EdgeSearch<'a> {
    cands: Vec<u64>,
    max_mult: usize,
    forbidden: Vec<Forbidden>,
    accept: &'a dyn Fn(&[u64]) -> bool,
    chosen: Vec<u64>,
    chosen_idx: Vec<usize>,
    best: Option<Vec<usize>>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl EdgeSearch<'_> {
    fn compatible(&self, e: u64) -> bool {
        self.forbidden.iter().all(|f| !completes(&self.chosen, 0, f.k - 1, e, f.s))
    }

    fn multiplicity_of_last(&self, j: usize) -> usize {
        self.chosen_idx.iter().rev().take_while(|&&i| i == j).count()
    }

    fn descend(&mut self, from: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let size = self.chosen.len();
        let best_size = self.best.as_ref().map(Vec::len);
        if best_size.is_none_or(|b| size > b) && (self.accept)(&self.chosen) {
            self.best = Some(self.chosen_idx.clone());
        }
        let open: Vec<usize> = (from..self.cands.len())
            .filter(|&j| self.multiplicity_of_last(j) < self.max_mult && self.compatible(self.cands[j]))
            .collect();
        if let Some(b) = self.best.as_ref().map(Vec::len) {
            if size + open.len() * self.max_mult <= b {
                return;
            }
        }
        for j in open {
            if self.aborted {
                return;
            }
            // edges later in `open` stay compatible only with what is chosen now
            if !self.compatible(self.cands[j]) {
                continue;
            }
            self.chosen.push(self.cands[j]);
            self.chosen_idx.push(j);
            self.descend(j);
            self.chosen.pop();
            self.chosen_idx.pop();
        }
    }
}

fn run_edge_search(
    n: usize,
    r: usize,
    max_mult: usize,
    forbidden: Vec<Forbidden>,
    accept: &dyn Fn(&[u64]) -> bool,
    budget: u64,
) -> Result<SearchResult> {
    let start = Instant::now();
    let mut search = EdgeSearch {
        cands: candidates(n, r)?,
        max_mult,
        forbidden,
        accept,
        chosen: Vec::new(),
        chosen_idx: Vec::new(),
        best: None,
        nodes: 0,
        budget,
        aborted: false,
    };
    search.descend(0);
    let witness = match &search.best {
        Some(idx) => {
            let mut h = MultiHypergraph::new(n, Uniformity::Uniform(r))?;
            for &j in idx {
                let e = search.cands[j];
                h.add_edge((0..n).filter(|&x| e >> x & 1 == 1), 1)?;
            }
            Some(Witness::Hypergraph(h))
        }
        None => None,
    };
    Ok(SearchResult {
        outcome: if search.aborted { SearchOutcome::Inconclusive } else { SearchOutcome::Exact },
        value: search.best.as_ref().map(Vec::len),
        witness,
        stats: SearchStats {
            nodes_explored: search.nodes,
            elapsed: start.elapsed(),
        },
        notes: Vec::new(),
    })
}

fn check_free_params(n: usize, s: usize, k: usize, r: usize) -> Result<()> {
    if !(2..=6).contains(&r) || r > n {
        return Err(Error::range(format!("need 2 <= r <= min(n, 6), got r = {r}, n = {n}")));
    }
    if k == 0 {
        return Err(Error::range("k must be at least 1"));
    }
    if s > 64 {
        return Err(Error::range(format!("s = {s} exceeds the supported vertex range")));
    }
    Ok(())
}

/// Maximum number of edges of a simple `(s,k)`-free `r`-uniform hypergraph on `n` vertices.
pub fn exact_free_simple(n: usize, s: usize, k: usize, r: usize, budget: u64) -> Result<SearchResult> {
    check_free_params(n, s, k, r)?;
    let forbidden = vec![Forbidden { s: s as u32, k }];
    run_edge_search(n, r, 1, forbidden, &|_| true, budget)
}

/// Maximum number of edges, counted with multiplicity, of an `(s,k)`-free
/// `r`-uniform multi-hypergraph on `n` vertices.
pub fn exact_free_multi(n: usize, s: usize, k: usize, r: usize, budget: u64) -> Result<SearchResult> {
    check_free_params(n, s, k, r)?;
    if s < r {
        return Err(Error::range(format!(
            "s = {s} < r = {r}: no configuration can form and multiplicities are unbounded"
        )));
    }
    let forbidden = vec![Forbidden { s: s as u32, k }];
    let mut result = run_edge_search(n, r, k - 1, forbidden, &|_| true, budget)?;
    result.notes.push(format!(
        "multiplicity capped at k-1 = {}: k copies of one edge span r <= s vertices",
        k - 1
    ));
    Ok(result)
}

/// Maximum number of edges of a simple 4-uniform hypergraph that is
/// `(2ell, ell-1)`-free, `(2i+1, i)`-free for `2 <= i <= ell-2`, and whose
/// vertices have degree 0 or at least `ell-1`.
pub fn exact_h4(n: usize, ell: usize, budget: u64) -> Result<SearchResult> {
    if ell < 3 {
        return Err(Error::range(format!("need ell >= 3, got {ell}")));
    }
    if n < 4 {
        return Err(Error::range(format!("need n >= 4, got {n}")));
    }
    let mut forbidden = vec![Forbidden {
        s: 2 * ell as u32,
        k: ell - 1,
    }];
    forbidden.extend((2..=ell - 2).map(|i| Forbidden {
        s: 2 * i as u32 + 1,
        k: i,
    }));
    let min_degree = ell - 1;
    let accept = move |edges: &[u64]| {
        (0..n).all(|v| {
            let d = edges.iter().filter(|&&e| e >> v & 1 == 1).count();
            d == 0 || d >= min_degree
        })
    };
    run_edge_search(n, 4, 1, forbidden, &accept, budget)
}
