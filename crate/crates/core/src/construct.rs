//! Explicit colorings: `(6,14)`-colorings from edge-disjoint `K_4` packings,
//! and quadratic-threshold colorings from hypergraphs in the restricted
//! extremal family via the active-pair procedure.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::coloring::{pair_count, Color, EdgeColoring, Pair, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, Uniformity};
use crate::verify::check_defh_properties;
use crate::witness::Verdict;

/// Orders with a built-in perfect packing.
pub const SUPPORTED_EXACT: [usize; 4] = [13, 16, 25, 28];

/// A family of 4-sets pairwise meeting in at most one point (a partial
/// Steiner system `S(2,4,n)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDesign {
    n: usize,
    blocks: Vec<VertexSet>,
    perfect: bool,
}

impl BlockDesign {
    /// Validates the blocks; they are stored sorted.
    pub fn new(n: usize, blocks: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut blocks: Vec<VertexSet> = blocks.into_iter().collect();
        blocks.sort();
        let mut owner: Vec<Option<usize>> = vec![None; pair_count(n)];
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != 4 {
                return Err(Error::InvalidEdge {
                    edge: b.members().to_vec(),
                    reason: "blocks must have 4 distinct points".into(),
                });
            }
            b.check_bounds(n)?;
            for p in b.pairs() {
                let slot = &mut owner[p.index(n)];
                if let Some(j) = *slot {
                    return Err(Error::OverlappingBlocks {
                        first: blocks[j].members().to_vec(),
                        second: b.members().to_vec(),
                    });
                }
                *slot = Some(i);
            }
        }
        let perfect = owner.iter().all(Option::is_some);
        Ok(BlockDesign { n, blocks, perfect })
    }

    /// Reads a design from a simple 4-uniform hypergraph.
    pub fn from_hypergraph(h: &MultiHypergraph) -> Result<Self> {
        h.require_simple()?;
        Self::new(h.n(), h.edges().map(|(e, _)| e.clone()))
    }

    pub fn to_hypergraph(&self) -> MultiHypergraph {
        MultiHypergraph::from_edges(self.n, Uniformity::Uniform(4), self.blocks.iter().map(|b| b.members().to_vec()))
            .expect("blocks are valid 4-sets")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    /// Every pair lies in exactly one block.
    pub fn is_perfect(&self) -> bool {
        self.perfect
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignMode {
    /// Built-in perfect packing; only for [`SUPPORTED_EXACT`].
    Exact,
    /// Maximal packing by first fit over 4-sets in lexicographic order.
    Greedy,
}

pub fn make_design(n: usize, mode: DesignMode) -> Result<BlockDesign> {
    match mode {
        DesignMode::Exact => exact_design(n),
        DesignMode::Greedy => greedy_design(n),
    }
}

fn develop<const D: usize>(
    moduli: [usize; D],
    base: &[[[usize; D]; 4]],
) -> impl Iterator<Item = VertexSet> + '_ {
    let index = move |x: [usize; D]| x.iter().zip(moduli).fold(0, |acc, (&c, m)| acc * m + c);
    let order: usize = moduli.iter().product();
    (0..order).flat_map(move |t| {
        let mut shift = [0usize; D];
        let mut rest = t;
        for d in (0..D).rev() {
            shift[d] = rest % moduli[d];
            rest /= moduli[d];
        }
        base.iter().map(move |block| {
            VertexSet::new(block.iter().map(|pt| {
                let mut moved = [0usize; D];
                for d in 0..D {
                    moved[d] = (pt[d] + shift[d]) % moduli[d];
                }
                index(moved)
            }))
        })
    })
}

fn exact_design(n: usize) -> Result<BlockDesign> {
    let blocks: Vec<VertexSet> = match n {
        // cyclic difference set {0,1,3,9} mod 13
        13 => develop([13], &[[[0], [1], [3], [9]]]).collect(),
        // lines of the affine plane over GF(4); point (x, y) is 4x + y
        16 => {
            const MUL: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
            let mut lines: Vec<VertexSet> = (0..4)
                .flat_map(|m| (0..4).map(move |b| VertexSet::new((0..4).map(|x| 4 * x + (MUL[m][x] ^ b)))))
                .collect();
            lines.extend((0..4).map(|c| VertexSet::new((0..4).map(|y| 4 * c + y))));
            lines
        }
        // difference family in Z5 x Z5; point (a, b) is 5a + b
        25 => develop(
            [5, 5],
            &[[[0, 0], [0, 1], [1, 0], [2, 2]], [[0, 0], [0, 2], [1, 3], [3, 2]]],
        )
        .collect(),
        // 1-rotational family over Z3^3 plus a fixed point 27
        28 => {
            let mut blocks: Vec<VertexSet> = develop(
                [3, 3, 3],
                &[
                    [[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 1]],
                    [[0, 0, 0], [0, 1, 2], [1, 2, 1], [2, 2, 0]],
                ],
            )
            .collect();
            blocks.extend((0..9).map(|g| VertexSet::new([3 * g, 3 * g + 1, 3 * g + 2, 27])));
            blocks
        }
        _ => return Err(Error::UnsupportedDesign(n)),
    };
    let design = BlockDesign::new(n, blocks)?;
    if !design.is_perfect() {
        return Err(Error::Internal(format!("built-in design for n = {n} is not perfect")));
    }
    Ok(design)
}

fn greedy_design(n: usize) -> Result<BlockDesign> {
    let mut covered = vec![false; pair_count(n)];
    let mut blocks = Vec::new();
    for quad in (0..n).combinations(4) {
        let set = VertexSet::new(quad);
        if set.pairs().all(|p| !covered[p.index(n)]) {
            for p in set.pairs() {
                covered[p.index(n)] = true;
            }
            blocks.push(set);
        }
    }
    BlockDesign::new(n, blocks)
}

/// Colors each block with five colors (its first perfect matching shares one
/// color) and every other pair uniquely. Shared colors are numbered by block
/// order; unique colors follow in lexicographic pair order.
pub fn coloring_from_design(design: &BlockDesign) -> EdgeColoring {
    let n = design.n();
    let mut shared: Vec<Option<Color>> = vec![None; pair_count(n)];
    for (i, b) in design.blocks().iter().enumerate() {
        let m = b.members();
        shared[Pair::new(m[0], m[1]).index(n)] = Some(i as Color);
        shared[Pair::new(m[2], m[3]).index(n)] = Some(i as Color);
    }
    fill_unique(n, &shared, design.blocks().len() as Color)
}

fn fill_unique(n: usize, shared: &[Option<Color>], first_unique: Color) -> EdgeColoring {
    let mut next = first_unique;
    EdgeColoring::from_fn(n, |p| {
        shared[p.index(n)].unwrap_or_else(|| {
            next += 1;
            next - 1
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Six14Route {
    /// Perfect packing on all `n` vertices.
    Perfect,
    /// Perfect packing on the first `core` vertices, the rest colored uniquely.
    Partition { core: usize },
    /// Maximal greedy packing on all `n` vertices.
    Greedy,
}

#[derive(Clone, Debug)]
pub struct Six14Construction {
    pub coloring: EdgeColoring,
    pub design: BlockDesign,
    pub route: Six14Route,
}

/// A `(6,14)`-coloring of `K_n` from a `K_4` packing.
///
/// Uses a built-in perfect packing when `n` is supported; otherwise packs
/// `K_{n-i+1}` with `i = n mod 12` when that order is supported; otherwise
/// falls back to a greedy packing.
pub fn coloring_614(n: usize) -> Result<Six14Construction> {
    if n < 4 {
        return Err(Error::range(format!("n must be at least 4, got {n}")));
    }
    let (design, route) = if SUPPORTED_EXACT.contains(&n) {
        (exact_design(n)?, Six14Route::Perfect)
    } else {
        let i = n % 12;
        let core = (n + 1).checked_sub(i).filter(|&m| i > 0 && m < n && SUPPORTED_EXACT.contains(&m));
        match core {
            Some(m) => {
                let inner = exact_design(m)?;
                (BlockDesign::new(n, inner.blocks().iter().cloned())?, Six14Route::Partition { core: m })
            }
            None => (greedy_design(n)?, Six14Route::Greedy),
        }
    };
    Ok(Six14Construction {
        coloring: coloring_from_design(&design),
        design,
        route,
    })
}

/// Bookkeeping of the active-pair procedure within one component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ActivePairState {
    /// Pairs carrying a shared color so far (`A_k`).
    pub active_pairs: BTreeSet<Pair>,
    /// Hyperedges processed in this component, in order.
    pub processed: Vec<VertexSet>,
    /// Unprocessed hyperedges containing an active pair (`H_k`).
    pub frontier: BTreeSet<VertexSet>,
    /// Vertices covered by the processed hyperedges.
    pub union: BTreeSet<Vertex>,
}

impl ActivePairState {
    pub fn union_size(&self) -> usize {
        self.union.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStep {
    pub edge: VertexSet,
    pub shared: [Pair; 2],
    pub color: Color,
    pub union_size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComponentTrace {
    pub steps: Vec<ComponentStep>,
    pub final_state: ActivePairState,
}

/// Colors `K_n` so that each hyperedge of `h` carries exactly one repeated
/// color (on two disjoint pairs inside it) and there are no other repeats.
///
/// `h` must pass [`check_defh_properties`] for `ell`; the output is then a
/// `(2ell, q_quad(2ell))`-coloring with `C(n,2) - |E(h)|` colors.
pub fn quad_coloring_from_hypergraph(h: &MultiHypergraph, ell: usize) -> Result<EdgeColoring> {
    quad_coloring_traced(h, ell).map(|(c, _)| c)
}

/// [`quad_coloring_from_hypergraph`] plus the per-component trace.
pub fn quad_coloring_traced(h: &MultiHypergraph, ell: usize) -> Result<(EdgeColoring, Vec<ComponentTrace>)> {
    if let Verdict::Violation(w) = check_defh_properties(h, ell)? {
        return Err(Error::Precondition(Box::new(w)));
    }
    active_pair_coloring(h, ell)
}

/// The procedure itself, without the precondition check. Seeds and frontier
/// edges are taken in lexicographic order; of the admissible disjoint pairs
/// of pairs, the lexicographically least.
pub(crate) fn active_pair_coloring(h: &MultiHypergraph, ell: usize) -> Result<(EdgeColoring, Vec<ComponentTrace>)> {
    let n = h.n();
    let edges: Vec<VertexSet> = h.edges().map(|(e, _)| e.clone()).collect();
    let mut claimed = vec![false; pair_count(n)];
    let mut shared: Vec<Option<Color>> = vec![None; pair_count(n)];
    let mut done = vec![false; edges.len()];
    let mut next_color: Color = 0;
    let mut traces = Vec::new();

    for seed in 0..edges.len() {
        if done[seed] {
            continue;
        }
        let mut state = ActivePairState::default();
        let mut trace = ComponentTrace::default();
        let mut current = seed;
        loop {
            let edge = &edges[current];
            let free: Vec<Pair> = edge.pairs().filter(|p| !claimed[p.index(n)]).collect();
            let (e, f) = free
                .iter()
                .tuple_combinations()
                .find(|(a, b)| a.is_disjoint(**b))
                .map(|(a, b)| (*a, *b))
                .ok_or_else(|| Error::Internal(format!("hyperedge {edge} has no two disjoint uncolored pairs")))?;
            for p in edge.pairs() {
                claimed[p.index(n)] = true;
            }
            shared[e.index(n)] = Some(next_color);
            shared[f.index(n)] = Some(next_color);
            state.active_pairs.extend([e, f]);
            state.union.extend(edge.members().iter().copied());
            state.processed.push(edge.clone());
            done[current] = true;

            let k = state.processed.len();
            if state.union_size() != 2 * (k + 1) {
                return Err(Error::Internal(format!(
                    "component union has {} vertices after {k} edges, expected {}",
                    state.union_size(),
                    2 * (k + 1)
                )));
            }
            if k + 1 >= ell {
                return Err(Error::Internal(format!("component reached {k} edges with ell = {ell}")));
            }
            trace.steps.push(ComponentStep {
                edge: edge.clone(),
                shared: [e, f],
                color: next_color,
                union_size: state.union_size(),
            });
            next_color += 1;

            state.frontier = edges
                .iter()
                .enumerate()
                .filter(|&(i, h)| !done[i] && state.active_pairs.iter().any(|a| h.contains(a.u()) && h.contains(a.v())))
                .map(|(_, h)| h.clone())
                .collect();
            let Some(next) = state.frontier.first() else {
                break;
            };
            let meet: Vec<Vertex> = next.members().iter().copied().filter(|x| state.union.contains(x)).collect();
            if meet.len() != 2 || !state.active_pairs.contains(&Pair::new(meet[0], meet[1])) {
                return Err(Error::Internal(format!(
                    "frontier edge {next} meets union in {meet:?}, not in exactly one active pair"
                )));
            }
            current = edges.iter().position(|x| x == next).expect("frontier edges come from h");
        }
        trace.final_state = state;
        traces.push(trace);
    }
    Ok((fill_unique(n, &shared, next_color), traces))
}
