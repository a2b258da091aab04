//! Exhaustive verification of `(p,q)`-colorings, `(s,k)`-freeness and the
//! structural properties of the restricted family used by the
//! quadratic-threshold construction.
//!
//! All witnesses are lexicographically least among the violating sets of the
//! relevant size, so results are stable across runs and strategies.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{pair_count, EdgeColoring, Pair, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;
use crate::witness::{Verdict, ViolationKind, ViolationWitness};

struct PqScanner {
    n: usize,
    ids: Vec<u32>,
    palette: usize,
    p: usize,
    q: usize,
}

impl PqScanner {
    fn new(coloring: &EdgeColoring, p: usize, q: usize) -> Result<Self> {
        let n = coloring.n();
        if p < 3 || p > n {
            return Err(Error::range(format!("need 3 <= p <= n, got p = {p}, n = {n}")));
        }
        if q < 2 || q > pair_count(p) {
            return Err(Error::range(format!("need 2 <= q <= C(p,2) = {}, got q = {q}", pair_count(p))));
        }
        let ids = coloring.dense_ids()?;
        Ok(PqScanner {
            n,
            ids,
            palette: coloring.palette_size(),
            p,
            q,
        })
    }

    fn colors(&self, set: &[Vertex], stamp: &mut [u32], tick: &mut u32) -> usize {
        *tick += 1;
        let mut distinct = 0;
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                let c = self.ids[Pair::new(a, b).index(self.n)] as usize;
                if stamp[c] != *tick {
                    stamp[c] = *tick;
                    distinct += 1;
                }
            }
        }
        distinct
    }

    fn witness(&self, set: Vec<Vertex>, colors: usize) -> ViolationWitness {
        ViolationWitness::new(ViolationKind::PqColoring { p: self.p, q: self.q }, VertexSet::new(set))
            .with_colors(colors, pair_count(self.p) - colors)
    }

    /// Violations whose smallest vertex is `first`, in lexicographic order.
    fn scan_from(&self, first: Vertex, limit: usize) -> Vec<ViolationWitness> {
        let mut stamp = vec![0u32; self.palette];
        let mut tick = 0;
        let mut out = Vec::new();
        for rest in (first + 1..self.n).combinations(self.p - 1) {
            let mut set = Vec::with_capacity(self.p);
            set.push(first);
            set.extend(rest);
            let c = self.colors(&set, &mut stamp, &mut tick);
            if c < self.q {
                out.push(self.witness(set, c));
                if out.len() >= limit {
                    break;
                }
            }
        }
        out
    }
}

/// Checks that every `p`-set spans at least `q` colors.
pub fn check_pq_coloring(coloring: &EdgeColoring, p: usize, q: usize) -> Result<Verdict> {
    let scan = PqScanner::new(coloring, p, q)?;
    Ok((0..scan.n)
        .find_map(|first| scan.scan_from(first, 1).pop())
        .into())
}

/// Parallel version of [`check_pq_coloring`], partitioned by the smallest
/// vertex of `S`. Returns the same witness as the sequential scan.
pub fn check_pq_coloring_par(coloring: &EdgeColoring, p: usize, q: usize) -> Result<Verdict> {
    let scan = PqScanner::new(coloring, p, q)?;
    Ok((0..scan.n)
        .into_par_iter()
        .find_map_first(|first| scan.scan_from(first, 1).pop())
        .into())
}

/// All violating `p`-sets in lexicographic order, at most `limit` of them.
pub fn enumerate_violations(
    coloring: &EdgeColoring,
    p: usize,
    q: usize,
    limit: usize,
) -> Result<Vec<ViolationWitness>> {
    let scan = PqScanner::new(coloring, p, q)?;
    let mut out = Vec::new();
    for first in 0..scan.n {
        if out.len() >= limit {
            break;
        }
        out.extend(scan.scan_from(first, limit - out.len()));
    }
    Ok(out)
}

/// How [`check_sk_free_with`] searches for configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStrategy {
    /// Picks the cheaper of the two below.
    Auto,
    /// Every `s`-subset of the vertices (requires `n <= 64`).
    VertexSubsets,
    /// Every multiset of `k` edges whose union has at most `s` vertices.
    EdgeUnions,
}

/// Checks that no `k` edges (with multiplicity) span at most `s` vertices.
pub fn check_sk_free(h: &MultiHypergraph, s: usize, k: usize) -> Result<Verdict> {
    check_sk_free_with(h, s, k, SkStrategy::Auto)
}

pub fn check_sk_free_with(h: &MultiHypergraph, s: usize, k: usize, strategy: SkStrategy) -> Result<Verdict> {
    if k < 1 {
        return Err(Error::range("k must be at least 1"));
    }
    if s < h.min_admissible_size() {
        return Err(Error::range(format!(
            "s = {s} is below the edge size {}",
            h.min_admissible_size()
        )));
    }
    let n = h.n();
    let strategy = match strategy {
        SkStrategy::Auto => {
            let by_edges = crate::binomial(h.total_edges(), k);
            let by_vertices = crate::binomial(n, s).saturating_mul(h.distinct_edge_count() as u64);
            if n > 64 || by_edges <= by_vertices {
                SkStrategy::EdgeUnions
            } else {
                SkStrategy::VertexSubsets
            }
        }
        other => other,
    };
    let subset = match strategy {
        SkStrategy::VertexSubsets => {
            if n > 64 {
                return Err(Error::range("vertex-subset strategy needs n <= 64"));
            }
            vertex_subset_witness(h, s, k)
        }
        _ => edge_union_witness(h, s, k),
    };
    Ok(subset
        .map(|set| {
            let induced = h.induced_edges(&set);
            ViolationWitness::new(ViolationKind::Configuration { s, k }, set).with_induced(induced)
        })
        .into())
}

fn mask_of(set: &[Vertex]) -> u64 {
    set.iter().fold(0, |acc, &x| acc | 1 << x)
}

fn vertex_subset_witness(h: &MultiHypergraph, s: usize, k: usize) -> Option<VertexSet> {
    let n = h.n();
    let edges = h.edge_masks();
    let induced = |mask: u64| -> usize {
        edges
            .iter()
            .filter(|(e, _)| e & !mask == 0)
            .map(|&(_, m)| m as usize)
            .sum()
    };
    if n < s {
        let all = VertexSet::full(n);
        return (induced(mask_of(all.members())) >= k).then_some(all);
    }
    (0..n)
        .combinations(s)
        .find(|set| induced(mask_of(set)) >= k)
        .map(VertexSet::new)
}

/// Lexicographically least superset of `u` with `target` elements.
fn pad_to(u: &[Vertex], n: usize, target: usize) -> VertexSet {
    let mut out: Vec<Vertex> = u.to_vec();
    let mut x = 0;
    while out.len() < target && x < n {
        if !u.contains(&x) {
            out.push(x);
        }
        x += 1;
    }
    VertexSet::new(out)
}

fn edge_union_witness(h: &MultiHypergraph, s: usize, k: usize) -> Option<VertexSet> {
    struct Walk<'a> {
        edges: Vec<(&'a [Vertex], u32)>,
        n: usize,
        s: usize,
        counts: Vec<u16>,
        size: usize,
        best: Option<VertexSet>,
    }

    impl Walk<'_> {
        fn enter(&mut self, e: &[Vertex]) {
            for &x in e {
                if self.counts[x] == 0 {
                    self.size += 1;
                }
                self.counts[x] += 1;
            }
        }

        fn leave(&mut self, e: &[Vertex]) {
            for &x in e {
                self.counts[x] -= 1;
                if self.counts[x] == 0 {
                    self.size -= 1;
                }
            }
        }

        fn run(&mut self, from: usize, remaining: usize) {
            if remaining == 0 {
                let union: Vec<Vertex> = (0..self.n).filter(|&x| self.counts[x] > 0).collect();
                let padded = pad_to(&union, self.n, self.s.min(self.n));
                if self.best.as_ref().is_none_or(|b| padded < *b) {
                    self.best = Some(padded);
                }
                return;
            }
            for i in from..self.edges.len() {
                let (e, m) = self.edges[i];
                self.enter(e);
                if self.size <= self.s {
                    for copies in 1..=(m as usize).min(remaining) {
                        self.run(i + 1, remaining - copies);
                    }
                }
                self.leave(e);
            }
        }
    }

    let mut walk = Walk {
        edges: h.edges().map(|(e, m)| (e.members(), m)).collect(),
        n: h.n(),
        s,
        counts: vec![0; h.n()],
        size: 0,
        best: None,
    };
    walk.run(0, k);
    walk.best
}

/// Checks the three properties defining the restricted family for parameter
/// `ell`: `(2ell, ell-1)`-free, `(2i+1, i)`-free for `i = 2..=ell-2`, and
/// every vertex of degree zero or at least `ell-1`.
pub fn check_defh_properties(h: &MultiHypergraph, ell: usize) -> Result<Verdict> {
    if ell < 3 {
        return Err(Error::range(format!("ell must be at least 3, got {ell}")));
    }
    h.require_simple()?;
    if let Some((e, _)) = h.edges().find(|(e, _)| e.len() != 4) {
        return Err(Error::InvalidEdge {
            edge: e.members().to_vec(),
            reason: "4-uniform hypergraph required".into(),
        });
    }
    let relabel = |verdict: Verdict, property: u8, s: usize, k: usize| {
        verdict.into_witness().map(|mut w| {
            w.kind = ViolationKind::DefHConfiguration { property, s, k };
            w
        })
    };
    if let Some(w) = relabel(check_sk_free(h, 2 * ell, ell - 1)?, 1, 2 * ell, ell - 1) {
        return Ok(Verdict::Violation(w));
    }
    for i in 2..=ell - 2 {
        if let Some(w) = relabel(check_sk_free(h, 2 * i + 1, i)?, 2, 2 * i + 1, i) {
            return Ok(Verdict::Violation(w));
        }
    }
    for v in 0..h.n() {
        let d = h.degree(v);
        if d > 0 && d < ell - 1 {
            let kind = ViolationKind::LowDegree {
                vertex: v,
                degree: d,
                min_degree: ell - 1,
            };
            return Ok(Verdict::Violation(ViolationWitness::new(kind, VertexSet::new([v]))));
        }
    }
    Ok(Verdict::Ok)
}

/// Structural facts forced on any `(6,14)`-coloring, measured on a given one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Six14Structure {
    /// Largest number of pairs sharing one color.
    pub max_color_multiplicity: usize,
    /// Number of monochromatic paths on three vertices.
    pub monochromatic_p3: usize,
    /// Vertex sets `K_c` of colors used on exactly two disjoint pairs.
    pub repeat_blocks: Vec<VertexSet>,
    /// Largest intersection between two distinct repeat blocks (0 if fewer than two).
    pub max_block_intersection: usize,
}

impl Six14Structure {
    /// The conditions every `(6,14)`-coloring satisfies.
    pub fn is_consistent(&self) -> bool {
        self.max_color_multiplicity <= 2 && self.monochromatic_p3 <= 1 && self.max_block_intersection <= 1
    }
}

pub fn six14_structure(coloring: &EdgeColoring) -> Result<Six14Structure> {
    coloring.require_total()?;
    let classes = coloring.color_classes();
    let max_color_multiplicity = classes.values().map(Vec::len).max().unwrap_or(0);
    let monochromatic_p3 = (0..coloring.n())
        .map(|v| {
            coloring
                .vertex_color_degrees(v)
                .values()
                .map(|&d| pair_count(d))
                .sum::<usize>()
        })
        .sum();
    let repeat_blocks: Vec<VertexSet> = classes
        .values()
        .filter(|pairs| pairs.len() == 2 && pairs[0].is_disjoint(pairs[1]))
        .map(|pairs| VertexSet::new([pairs[0].u(), pairs[0].v(), pairs[1].u(), pairs[1].v()]))
        .collect();
    let max_block_intersection = repeat_blocks
        .iter()
        .tuple_combinations()
        .map(|(a, b)| a.intersection_len(b))
        .max()
        .unwrap_or(0);
    Ok(Six14Structure {
        max_color_multiplicity,
        monochromatic_p3,
        repeat_blocks,
        max_block_intersection,
    })
}
