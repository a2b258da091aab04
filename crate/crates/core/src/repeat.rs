//! Repeat hypergraphs: every repetition of a color becomes a hyperedge.
//!
//! The quadratic builder joins each non-representative edge of a color with
//! that color's representative `e_c`. The linear builder works locally at each
//! vertex, joining the first edge of each color at `v` with every other one.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::coloring::{pair_count, Color, EdgeColoring, Pair, VertexSet};
use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, Uniformity};
use crate::witness::{Verdict, ViolationKind, ViolationWitness};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum RepresentativeRule {
    /// Lexicographically least pair of each color.
    #[default]
    LexLeast,
    /// Caller-chosen representative per color; colors not listed fall back
    /// to the least pair.
    Explicit(BTreeMap<Color, Pair>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PaddingRule {
    /// 3-vertex unions stay 3-sets; the result has mixed uniformity.
    #[default]
    Strict,
    /// 3-vertex unions get the smallest vertex not already in them.
    Padded,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepeatBuildPolicy {
    pub representative: RepresentativeRule,
    pub padding: PaddingRule,
}

impl RepeatBuildPolicy {
    pub fn padded() -> Self {
        RepeatBuildPolicy {
            padding: PaddingRule::Padded,
            ..Default::default()
        }
    }
}

/// One hyperedge per non-representative pair of each color.
pub fn build_repeat_quadratic(coloring: &EdgeColoring, policy: &RepeatBuildPolicy) -> Result<MultiHypergraph> {
    coloring.require_total()?;
    let n = coloring.n();
    let uniformity = match policy.padding {
        PaddingRule::Strict => Uniformity::Mixed,
        PaddingRule::Padded => Uniformity::Uniform(4),
    };
    let mut h = MultiHypergraph::new(n, uniformity)?;
    for (color, pairs) in coloring.color_classes() {
        let rep = match &policy.representative {
            RepresentativeRule::Explicit(map) if map.contains_key(&color) => {
                let rep = map[&color];
                if coloring.color(rep) != Some(color) {
                    return Err(Error::range(format!("representative {rep} does not have color {color}")));
                }
                rep
            }
            _ => pairs[0],
        };
        for &e in pairs.iter().filter(|&&e| e != rep) {
            let mut set = VertexSet::new([rep.u(), rep.v(), e.u(), e.v()]);
            if set.len() == 3 && policy.padding == PaddingRule::Padded {
                let extra = (0..n)
                    .find(|&x| !set.contains(x))
                    .ok_or_else(|| Error::range("padding needs at least 4 vertices"))?;
                set = set.union(&VertexSet::new([extra]));
            }
            h.add_edge(set.members().iter().copied(), 1)?;
        }
    }
    Ok(h)
}

/// For each vertex `v` and color `c` with edges `e_1 < .. < e_d` at `v`,
/// adds the triples `e_1 ∪ e_i` for `i = 2..=d`.
pub fn build_repeat_linear(coloring: &EdgeColoring) -> Result<MultiHypergraph> {
    coloring.require_total()?;
    let n = coloring.n();
    let mut h = MultiHypergraph::new(n, Uniformity::Uniform(3))?;
    for v in 0..n {
        let mut by_color: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
        for w in (0..n).filter(|&w| w != v) {
            let c = coloring.color_of(v, w).expect("total coloring");
            by_color.entry(c).or_default().push(w);
        }
        for others in by_color.values() {
            let first = others[0];
            for &w in &others[1..] {
                h.add_edge([v, first, w], 1)?;
            }
        }
    }
    Ok(h)
}

/// Compares `r(S)` with the number of induced hyperedges over every `S ⊆ V`.
///
/// Strict mode demands equality everywhere. Padded mode demands
/// `|E(H[S])| <= r(S)` everywhere and equality at `S = V`. Sets are scanned
/// by size, then lexicographically; the first failure is returned.
pub fn check_faithfulness(coloring: &EdgeColoring, h: &MultiHypergraph, padding: PaddingRule) -> Result<Verdict> {
    let n = coloring.n();
    if n > 20 {
        return Err(Error::range(format!("exhaustive faithfulness check limited to n <= 20, got {n}")));
    }
    if h.n() != n {
        return Err(Error::range("coloring and hypergraph have different vertex counts"));
    }
    let ids = coloring.dense_ids()?;
    let edges = h.edge_masks();
    let mut stamp = vec![0u32; coloring.palette_size()];
    let mut tick = 0u32;
    for size in 0..=n {
        for set in (0..n).combinations(size) {
            tick += 1;
            let mut colors = 0;
            for (i, &a) in set.iter().enumerate() {
                for &b in &set[i + 1..] {
                    let c = ids[Pair::new(a, b).index(n)] as usize;
                    if stamp[c] != tick {
                        stamp[c] = tick;
                        colors += 1;
                    }
                }
            }
            let repeats = pair_count(size) - colors;
            let mask = set.iter().fold(0u64, |acc, &x| acc | 1 << x);
            let induced: usize = edges.iter().filter(|(e, _)| e & !mask == 0).map(|&(_, m)| m as usize).sum();
            let bad = match padding {
                PaddingRule::Strict => induced != repeats,
                PaddingRule::Padded => induced > repeats || (size == n && induced != repeats),
            };
            if bad {
                let kind = ViolationKind::Faithfulness {
                    padded: padding == PaddingRule::Padded,
                };
                let w = ViolationWitness::new(kind, VertexSet::new(set))
                    .with_colors(colors, repeats)
                    .with_induced(induced);
                return Ok(Verdict::Violation(w));
            }
        }
    }
    Ok(Verdict::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rainbow_has_no_repeats() {
        let c = EdgeColoring::rainbow(6);
        assert!(build_repeat_quadratic(&c, &RepeatBuildPolicy::default()).unwrap().is_empty());
        assert!(build_repeat_linear(&c).unwrap().is_empty());
    }

    #[test]
    fn three_disjoint_same_colored_edges() {
        let mut c = EdgeColoring::rainbow(6);
        for p in [Pair::new(0, 1), Pair::new(2, 3), Pair::new(4, 5)] {
            c.set(p, 99).unwrap();
        }
        let h = build_repeat_quadratic(&c, &RepeatBuildPolicy::default()).unwrap();
        let edges: Vec<_> = h.edges().map(|(e, m)| (e.members().to_vec(), m)).collect();
        assert_eq!(edges, vec![(vec![0, 1, 2, 3], 1), (vec![0, 1, 4, 5], 1)]);
        // the repeat 23 ~ 45 is counted by r but joined to 01, not to each other
        let w = check_faithfulness(&c, &h, PaddingRule::Strict).unwrap().into_witness().unwrap();
        assert_eq!(w.subset.members(), &[2, 3, 4, 5]);
        assert_eq!((w.repeats, w.induced_edges), (Some(1), Some(0)));
        assert!(check_faithfulness(&c, &h, PaddingRule::Padded).unwrap().is_ok());

        let mut reps = BTreeMap::new();
        reps.insert(99, Pair::new(2, 3));
        let policy = RepeatBuildPolicy {
            representative: RepresentativeRule::Explicit(reps),
            ..Default::default()
        };
        let h2 = build_repeat_quadratic(&c, &policy).unwrap();
        assert!(h2.multiplicity(&VertexSet::new([2, 3, 4, 5])) == 1);
        let mut bad = BTreeMap::new();
        bad.insert(99, Pair::new(0, 2));
        let policy = RepeatBuildPolicy {
            representative: RepresentativeRule::Explicit(bad),
            ..Default::default()
        };
        assert!(build_repeat_quadratic(&c, &policy).is_err());
    }

    #[test]
    fn padding_turns_triples_into_quads() {
        let mut c = EdgeColoring::rainbow(5);
        c.set(Pair::new(1, 2), 50).unwrap();
        c.set(Pair::new(2, 3), 50).unwrap();
        let strict = build_repeat_quadratic(&c, &RepeatBuildPolicy::default()).unwrap();
        assert_eq!(strict.multiplicity(&VertexSet::new([1, 2, 3])), 1);
        let padded = build_repeat_quadratic(&c, &RepeatBuildPolicy::padded()).unwrap();
        assert_eq!(padded.multiplicity(&VertexSet::new([0, 1, 2, 3])), 1);
        assert!(check_faithfulness(&c, &strict, PaddingRule::Strict).unwrap().is_ok());
        // S = {1,2,3} carries the repeat but no longer induces the padded edge
        let w = check_faithfulness(&c, &padded, PaddingRule::Strict).unwrap().into_witness().unwrap();
        assert_eq!(w.subset.members(), &[1, 2, 3]);
        assert!(check_faithfulness(&c, &padded, PaddingRule::Padded).unwrap().is_ok());
    }

    #[test]
    fn monochromatic_triangle_in_linear_builder() {
        let mut c = EdgeColoring::rainbow(5);
        for p in [Pair::new(0, 1), Pair::new(0, 2), Pair::new(1, 2)] {
            c.set(p, 77).unwrap();
        }
        let h = build_repeat_linear(&c).unwrap();
        // one triple from each corner of the triangle
        assert_eq!(h.multiplicity(&VertexSet::new([0, 1, 2])), 3);
        assert_eq!(h.total_edges(), 3);
    }

    #[test]
    fn monochromatic_star_in_linear_builder() {
        let mut c = EdgeColoring::rainbow(5);
        for w in 1..4 {
            c.set(Pair::new(0, w), 100).unwrap();
        }
        let h = build_repeat_linear(&c).unwrap();
        assert_eq!(h.total_edges(), 2);
        assert!(h.edges().all(|(e, _)| e.contains(0) && e.contains(1)));
    }

    #[test]
    fn proper_coloring_gives_empty_linear_hypergraph() {
        // round-robin 1-factorization of K6
        let n = 6;
        let c = EdgeColoring::from_fn(n, |p| {
            let (u, v) = (p.u(), p.v());
            if v == n - 1 {
                (2 * u % (n - 1)) as Color
            } else {
                ((u + v) % (n - 1)) as Color
            }
        });
        for v in 0..n {
            assert!(c.vertex_color_degrees(v).values().all(|&d| d == 1));
        }
        assert!(build_repeat_linear(&c).unwrap().is_empty());
    }

    #[test]
    fn partial_colorings_are_rejected() {
        let mut c = EdgeColoring::rainbow(4);
        c.clear(Pair::new(0, 3));
        assert!(build_repeat_quadratic(&c, &RepeatBuildPolicy::default()).is_err());
        assert!(build_repeat_linear(&c).is_err());
    }
}
