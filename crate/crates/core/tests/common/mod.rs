//! Brute-force oracles written without the library's checkers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use genramsey::{EdgeColoring, MultiHypergraph};
use itertools::Itertools;

/// Distinct colors on the pairs of `set`; `None` if a pair is uncolored.
pub fn colors_in(c: &EdgeColoring, set: &[usize]) -> Option<usize> {
    let mut seen = BTreeSet::new();
    for (a, b) in set.iter().tuple_combinations() {
        seen.insert(c.color_of(*a, *b)?);
    }
    Some(seen.len())
}

pub fn is_pq(c: &EdgeColoring, p: usize, q: usize) -> bool {
    (0..c.n()).combinations(p).all(|s| colors_in(c, &s).is_some_and(|k| k >= q))
}

pub fn repeats(c: &EdgeColoring, set: &[usize]) -> usize {
    let pairs = set.len() * set.len().saturating_sub(1) / 2;
    pairs - colors_in(c, set).expect("total coloring")
}

/// Edges inside `set`, counted with multiplicity.
pub fn induced(h: &MultiHypergraph, set: &[usize]) -> usize {
    h.edges()
        .filter(|(e, _)| e.members().iter().all(|v| set.contains(v)))
        .map(|(_, m)| m as usize)
        .sum()
}

/// Some `s`-set spans at least `k` edges.
pub fn has_configuration(h: &MultiHypergraph, s: usize, k: usize) -> bool {
    (0..h.n()).combinations(s.min(h.n())).any(|set| induced(h, &set) >= k)
}

pub fn palette(c: &EdgeColoring) -> usize {
    (0..c.n())
        .tuple_combinations()
        .filter_map(|(a, b)| c.color_of(a, b))
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
