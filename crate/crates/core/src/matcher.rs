//! Configuration-avoiding colorings at the linear threshold.
//!
//! The model: `A = E(K_n)`, `B = V(K_n) x C`, and for every pair `uv` and
//! color `c` a hyperedge `{uv, u_c, v_c}`. A perfect `A`-matching in which
//! each `B`-vertex is used at most once is a coloring where every color
//! class is a matching. A vertex set `S` with `4 <= |S| <= p` is a
//! configuration when it is spanned by its repeated-color edges and
//! `r(S) >= |S| - 2`; a coloring avoiding all configurations is a
//! `(p, q_lin(p))`-coloring.
//!
//! [`find_avoiding_coloring`] realizes this at desk scale by randomized
//! greedy assignment with full restarts.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{pair_count, Color, EdgeColoring, Pair, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::witness::{Verdict, ViolationKind, ViolationWitness};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColorGraphSpec {
    pub n: usize,
    pub palette: Vec<Color>,
    /// The degree parameter `D`, equal to `n`.
    pub degree: usize,
    /// Palette surplus exponent: the asymptotic palette is `n + n^(1-epsilon)`.
    pub epsilon: f64,
}

impl ColorGraphSpec {
    pub fn new(n: usize, palette_size: usize, epsilon: f64) -> Result<Self> {
        if palette_size == 0 {
            return Err(Error::range("palette must be nonempty"));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::range(format!("need 0 < epsilon < 1, got {epsilon}")));
        }
        Ok(ColorGraphSpec {
            n,
            palette: (0..palette_size as Color).collect(),
            degree: n,
            epsilon,
        })
    }

    /// Uses the asymptotic palette size `n + ceil(n^(1-epsilon))`.
    pub fn with_surplus(n: usize, epsilon: f64) -> Result<Self> {
        let surplus = (n as f64).powf(1.0 - epsilon).ceil() as usize;
        Self::new(n, n + surplus, epsilon)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigCheckReport {
    pub a_vertices: usize,
    pub b_vertices: usize,
    /// Degree of every `A`-vertex.
    pub a_degree: usize,
    /// Largest degree of a `B`-vertex (all are equal).
    pub b_degree_max: usize,
    pub max_pair_codegree: usize,
}

/// Degrees and codegrees of the model, computed from its structure.
///
/// `uv` lies in one hyperedge per color; `v_c` in one per other endpoint.
/// Two vertices of the model determine at most one hyperedge: `{uv, u_c}`
/// fixes the color, `{u_c, v_c}` fixes the pair, and every other pair of
/// vertices shares no hyperedge.
pub fn verify_g_conditions(spec: &ColorGraphSpec) -> ConfigCheckReport {
    let colors = spec.palette.len();
    let edges_exist = spec.n >= 2 && colors >= 1;
    ConfigCheckReport {
        a_vertices: pair_count(spec.n),
        b_vertices: spec.n * colors,
        a_degree: colors,
        b_degree_max: spec.n.saturating_sub(1),
        max_pair_codegree: usize::from(edges_exist),
    }
}

/// Incremental bookkeeping for greedy assignment.
///
/// Invariant: the current partial coloring has no color twice at a vertex
/// and no configuration. Under that invariant a new assignment `uv -> c`
/// creates a configuration iff some `U` containing `uv` and another
/// `c`-edge `xy`, with `|U| <= p` and all extra vertices on repeated-color
/// edges, has `r(U) >= |U| - 2`: removing a vertex that lies on no
/// repeated edge of `U` keeps `r(U)`, so a minimal such `U` is spanned.
#[derive(Clone, Debug)]
pub struct ConfigurationTracker {
    n: usize,
    p: usize,
    palette_size: usize,
    slots: Vec<Option<Color>>,
    used_at: Vec<Vec<bool>>,
    classes: Vec<Vec<Pair>>,
    /// Colored pairs at each vertex whose class has two or more members.
    on_repeats: Vec<usize>,
    stamp: Vec<u64>,
    tick: u64,
}

impl ConfigurationTracker {
    pub fn new(n: usize, p: usize, palette_size: usize) -> Result<Self> {
        if p < 4 {
            return Err(Error::range(format!("need p >= 4, got {p}")));
        }
        if palette_size == 0 {
            return Err(Error::range("palette must be nonempty"));
        }
        Ok(ConfigurationTracker {
            n,
            p,
            palette_size,
            slots: vec![None; pair_count(n)],
            used_at: vec![vec![false; palette_size]; n],
            classes: vec![Vec::new(); palette_size],
            on_repeats: vec![0; n],
            stamp: vec![0; palette_size],
            tick: 0,
        })
    }

    pub fn coloring(&self) -> EdgeColoring {
        let mut c = EdgeColoring::uncolored(self.n);
        for (pair, slot) in Pair::all(self.n).zip(&self.slots) {
            if let Some(color) = slot {
                c.set(pair, *color).expect("pairs are in range");
            }
        }
        c
    }

    fn repeats_in(&mut self, set: &[Vertex]) -> usize {
        self.tick += 1;
        let mut colored = 0;
        let mut distinct = 0;
        for (a, b) in set.iter().tuple_combinations() {
            if let Some(c) = self.slots[Pair::new(*a, *b).index(self.n)] {
                colored += 1;
                if self.stamp[c as usize] != self.tick {
                    self.stamp[c as usize] = self.tick;
                    distinct += 1;
                }
            }
        }
        colored - distinct
    }

    /// Whether `pair -> color` keeps the invariant. `pair` must be uncolored.
    pub fn admits(&mut self, pair: Pair, color: Color) -> bool {
        let c = color as usize;
        if c >= self.palette_size || self.used_at[pair.u()][c] || self.used_at[pair.v()][c] {
            return false;
        }
        if self.classes[c].is_empty() {
            return true;
        }
        let idx = pair.index(self.n);
        debug_assert!(self.slots[idx].is_none());
        self.slots[idx] = Some(color);
        let bad = self.closes_configuration(pair, c);
        self.slots[idx] = None;
        !bad
    }

    fn closes_configuration(&mut self, pair: Pair, c: usize) -> bool {
        let partners = self.classes[c].clone();
        for other in partners {
            let core = [pair.u(), pair.v(), other.u(), other.v()];
            let extras: Vec<Vertex> = (0..self.n)
                .filter(|w| !core.contains(w))
                .filter(|&w| self.on_repeats[w] > 0)
                .collect();
            for size in 0..=self.p.saturating_sub(4).min(extras.len()) {
                for chosen in extras.iter().copied().combinations(size) {
                    let mut set = core.to_vec();
                    set.extend(chosen);
                    let repeats = self.repeats_in(&set);
                    if repeats + 2 >= set.len() {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Commits `pair -> color` without checking.
    pub fn assign(&mut self, pair: Pair, color: Color) -> Result<()> {
        let c = color as usize;
        if c >= self.palette_size {
            return Err(Error::range(format!("color {color} outside palette of size {}", self.palette_size)));
        }
        if pair.v() >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: pair.v(),
                n: self.n,
            });
        }
        let idx = pair.index(self.n);
        if self.slots[idx].is_some() {
            return Err(Error::range(format!("pair {pair} is already colored")));
        }
        self.slots[idx] = Some(color);
        self.used_at[pair.u()][c] = true;
        self.used_at[pair.v()][c] = true;
        let class = &mut self.classes[c];
        class.push(pair);
        match class.len() {
            1 => {}
            2 => {
                for e in class.clone() {
                    self.on_repeats[e.u()] += 1;
                    self.on_repeats[e.v()] += 1;
                }
            }
            _ => {
                self.on_repeats[pair.u()] += 1;
                self.on_repeats[pair.v()] += 1;
            }
        }
        Ok(())
    }

    /// Reverts the most recent assignment of `pair`'s color class.
    fn unassign_last(&mut self, pair: Pair) {
        let idx = pair.index(self.n);
        let c = self.slots[idx].take().expect("pair is colored") as usize;
        self.used_at[pair.u()][c] = false;
        self.used_at[pair.v()][c] = false;
        let class = &mut self.classes[c];
        debug_assert_eq!(class.last(), Some(&pair));
        class.pop();
        match class.len() {
            0 => {}
            1 => {
                for e in [class[0], pair] {
                    self.on_repeats[e.u()] -= 1;
                    self.on_repeats[e.v()] -= 1;
                }
            }
            _ => {
                self.on_repeats[pair.u()] -= 1;
                self.on_repeats[pair.v()] -= 1;
            }
        }
    }
}

/// Assignments tried per attempt before giving up on it.
pub const ATTEMPT_NODE_BUDGET: u64 = 20_000;

struct Attempt {
    tracker: ConfigurationTracker,
    /// Uncolored pairs in seeded order.
    order: Vec<Pair>,
    palette: Vec<Color>,
    rng: ChaCha8Rng,
    nodes: u64,
    stuck: Option<Pair>,
}

impl Attempt {
    fn descend(&mut self) -> bool {
        if self.order.is_empty() {
            return true;
        }
        // most constrained pair first; ties go to the earlier pair in the seeded order
        let mut best: Option<(usize, usize)> = None;
        for i in 0..self.order.len() {
            let pair = self.order[i];
            let k = self.palette.iter().filter(|&&c| self.tracker.admits(pair, c)).count();
            if best.is_none_or(|(_, bk)| k < bk) {
                best = Some((i, k));
            }
        }
        let (pos, _) = best.expect("order is nonempty");
        let pair = self.order.remove(pos);
        self.palette.shuffle(&mut self.rng);
        let options: Vec<Color> = self.palette.clone().into_iter().filter(|&c| self.tracker.admits(pair, c)).collect();
        if options.is_empty() && self.stuck.is_none() {
            self.stuck = Some(pair);
        }
        for c in options {
            if self.nodes >= ATTEMPT_NODE_BUDGET {
                break;
            }
            self.nodes += 1;
            self.tracker.assign(pair, c).expect("admissible colors are in range");
            if self.descend() {
                return true;
            }
            self.tracker.unassign_last(pair);
        }
        self.order.insert(pos, pair);
        false
    }
}

#[derive(Clone, Debug)]
pub struct MatchRun {
    pub coloring: EdgeColoring,
    /// Restarts needed before success (0 if the first attempt succeeded).
    pub restarts_used: u32,
}

/// Randomized search for a configuration-avoiding coloring with at most
/// `palette_size` colors.
///
/// Attempt `i` (0 for the first, up to `max_restarts`) uses the generator
/// seeded with `seed + i` to shuffle the pair order. It then repeatedly
/// colors the uncolored pair with the fewest admissible colors, trying
/// those colors in a freshly shuffled palette order. The first descent is
/// plain greedy; dead ends backtrack until [`ATTEMPT_NODE_BUDGET`]
/// assignments are spent, after which the attempt is abandoned.
pub fn find_avoiding_coloring(
    n: usize,
    p: usize,
    palette_size: usize,
    seed: u64,
    max_restarts: u32,
) -> Result<MatchRun> {
    if n < 2 {
        return Err(Error::range(format!("need n >= 2, got {n}")));
    }
    let mut stuck = Pair::new(0, 1);
    for attempt in 0..=max_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(attempt)));
        let mut order: Vec<Pair> = Pair::all(n).collect();
        order.shuffle(&mut rng);
        let mut run = Attempt {
            tracker: ConfigurationTracker::new(n, p, palette_size)?,
            order,
            palette: (0..palette_size as Color).collect(),
            rng,
            nodes: 0,
            stuck: None,
        };
        if run.descend() {
            return Ok(MatchRun {
                coloring: run.tracker.coloring(),
                restarts_used: attempt,
            });
        }
        stuck = run.stuck.unwrap_or(stuck);
    }
    Err(Error::MatchFailure {
        u: stuck.u(),
        v: stuck.v(),
        restarts_used: max_restarts,
    })
}

/// Smallest configuration of a (possibly partial) coloring: a set `S` with
/// `4 <= |S| <= p`, every vertex on an edge of `S` whose color appears at
/// least twice in `S`, and `r(S) >= |S| - 2`. Scanned by size, then
/// lexicographically.
///
/// When every color class is a matching, passing this audit implies being a
/// `(p, q_lin(p))`-coloring. Without that, a monochromatic triangle plus any
/// vertex violates the threshold while no spanned set of size 4 or more exists.
pub fn audit_configuration(coloring: &EdgeColoring, p: usize) -> Result<Verdict> {
    if p < 4 {
        return Err(Error::range(format!("need p >= 4, got {p}")));
    }
    let n = coloring.n();
    let mut counts: std::collections::HashMap<Color, usize> = std::collections::HashMap::new();
    for size in 4..=p.min(n) {
        for set in (0..n).combinations(size) {
            counts.clear();
            let mut colored = 0;
            for (a, b) in set.iter().tuple_combinations() {
                if let Some(c) = coloring.color_of(*a, *b) {
                    colored += 1;
                    *counts.entry(c).or_default() += 1;
                }
            }
            let repeats = colored - counts.len();
            if repeats + 2 < size {
                continue;
            }
            let spanned = set.iter().all(|&x| {
                set.iter()
                    .filter(|&&y| y != x)
                    .any(|&y| coloring.color_of(x, y).is_some_and(|c| counts[&c] >= 2))
            });
            if spanned {
                let w = ViolationWitness::new(ViolationKind::ForbiddenSubmatching, VertexSet::new(set))
                    .with_colors(counts.len(), repeats);
                return Ok(Verdict::Violation(w));
            }
        }
    }
    Ok(Verdict::Ok)
}

/// Every color class is a matching.
pub fn is_proper(coloring: &EdgeColoring) -> bool {
    (0..coloring.n()).all(|v| coloring.vertex_color_degrees(v).values().all(|&d| d <= 1))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::verify::check_pq_coloring;

    /// The model's hyperedges as (pair index, (u, c), (v, c)).
    fn materialize(n: usize, colors: usize) -> Vec<[(usize, usize); 3]> {
        let mut out = Vec::new();
        for pair in Pair::all(n) {
            for c in 0..colors {
                // A-vertices tagged with usize::MAX to keep the parts apart
                out.push([(usize::MAX, pair.index(n)), (pair.u(), c), (pair.v(), c)]);
            }
        }
        out
    }

    #[test]
    fn model_degrees_match_materialization() {
        for (n, k) in [(4, 6), (5, 3), (6, 7), (10, 13)] {
            let spec = ColorGraphSpec::new(n, k, 0.5).unwrap();
            let report = verify_g_conditions(&spec);
            let g = materialize(n, k);
            let mut degree: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            let mut codegree: BTreeMap<_, usize> = BTreeMap::new();
            for e in &g {
                for x in e {
                    *degree.entry(*x).or_default() += 1;
                }
                for (x, y) in e.iter().tuple_combinations() {
                    *codegree.entry((*x, *y)).or_default() += 1;
                }
            }
            let a_deg: Vec<usize> = degree.iter().filter(|(x, _)| x.0 == usize::MAX).map(|(_, d)| *d).collect();
            let b_deg: Vec<usize> = degree.iter().filter(|(x, _)| x.0 != usize::MAX).map(|(_, d)| *d).collect();
            assert_eq!(a_deg.len(), report.a_vertices);
            assert_eq!(b_deg.len(), report.b_vertices);
            assert!(a_deg.iter().all(|&d| d == report.a_degree));
            assert_eq!(b_deg.iter().max().copied(), Some(report.b_degree_max));
            assert_eq!(codegree.values().max().copied(), Some(report.max_pair_codegree));
        }
        let r = verify_g_conditions(&ColorGraphSpec::new(10, 13, 0.5).unwrap());
        assert_eq!((r.a_degree, r.b_degree_max, r.max_pair_codegree), (13, 9, 1));
        let r = verify_g_conditions(&ColorGraphSpec::new(4, 6, 0.5).unwrap());
        assert_eq!((r.a_degree, r.b_degree_max, r.max_pair_codegree), (6, 3, 1));
    }

    #[test]
    fn color_graph_parameters_are_validated() {
        assert!(ColorGraphSpec::new(5, 0, 0.5).is_err());
        assert!(ColorGraphSpec::new(5, 5, 1.0).is_err());
        assert_eq!(ColorGraphSpec::with_surplus(16, 0.5).unwrap().palette.len(), 20);
    }

    #[test]
    fn audit_examples() {
        assert!(audit_configuration(&EdgeColoring::rainbow(7), 6).unwrap().is_ok());

        // one repeat on disjoint pairs: r = 1 < 2
        let mut c = EdgeColoring::rainbow(4);
        c.set(Pair::new(2, 3), c.color(Pair::new(0, 1)).unwrap()).unwrap();
        assert!(audit_configuration(&c, 4).unwrap().is_ok());
        // a second repeat on the other perfect matching
        c.set(Pair::new(1, 3), c.color(Pair::new(0, 2)).unwrap()).unwrap();
        let w = audit_configuration(&c, 4).unwrap().into_witness().unwrap();
        assert_eq!(w.subset.members(), &[0, 1, 2, 3]);
        assert_eq!(w.repeats, Some(2));
    }

    #[test]
    fn audit_flags_the_smallest_spanned_set() {
        // 01 ~ 23 and 02 ~ 13 inside {0,1,2,3}, plus 45 ~ 01 reaching out to 6 vertices
        let mut c = EdgeColoring::rainbow(6);
        let a = c.color(Pair::new(0, 1)).unwrap();
        let b = c.color(Pair::new(0, 2)).unwrap();
        c.set(Pair::new(2, 3), a).unwrap();
        c.set(Pair::new(4, 5), a).unwrap();
        c.set(Pair::new(1, 3), b).unwrap();
        let w = audit_configuration(&c, 6).unwrap().into_witness().unwrap();
        assert_eq!(w.subset.len(), 4);
    }

    #[test]
    fn unspanned_sets_are_not_configurations() {
        // a monochromatic triangle is below the size range; the fourth vertex is unspanned
        let mut c = EdgeColoring::rainbow(4);
        for p in [Pair::new(0, 1), Pair::new(0, 2), Pair::new(1, 2)] {
            c.set(p, 99).unwrap();
        }
        assert!(audit_configuration(&c, 4).unwrap().is_ok());
        assert!(!check_pq_coloring(&c, 4, 5).unwrap().is_ok());
        assert!(!is_proper(&c));
    }

    #[test]
    fn rainbow_palette_always_succeeds() {
        let run = find_avoiding_coloring(6, 4, 15, 3, 0).unwrap();
        assert!(run.coloring.is_total());
        assert!(is_proper(&run.coloring));
        assert!(audit_configuration(&run.coloring, 4).unwrap().is_ok());
    }

    #[test]
    fn greedy_is_deterministic() {
        let a = find_avoiding_coloring(12, 4, 12, 5, 20).unwrap();
        let b = find_avoiding_coloring(12, 4, 12, 5, 20).unwrap();
        assert_eq!(a.coloring, b.coloring);
        assert_eq!(a.restarts_used, b.restarts_used);
    }

    #[test]
    fn impossible_palette_reports_failure() {
        // K_4 needs 3 colors even without configuration constraints
        let err = find_avoiding_coloring(4, 4, 2, 0, 5).unwrap_err();
        assert!(matches!(err, Error::MatchFailure { restarts_used: 5, .. }));
    }

    #[test]
    fn tracker_rejects_reuse_at_a_vertex() {
        let mut t = ConfigurationTracker::new(5, 4, 3).unwrap();
        t.assign(Pair::new(0, 1), 0).unwrap();
        assert!(!t.admits(Pair::new(1, 2), 0));
        assert!(t.admits(Pair::new(2, 3), 0));
        assert!(!t.admits(Pair::new(2, 3), 3));
        assert!(t.assign(Pair::new(0, 1), 1).is_err());
    }
}
