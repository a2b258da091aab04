//! Seeded random instances for property tests and benchmarks.

use std::collections::BTreeSet;

use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;

use crate::coloring::{pair_count, Color, EdgeColoring, Vertex, VertexSet};
use crate::construct::{make_design, DesignMode};
use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, Uniformity};
use crate::verify::check_sk_free;

/// Total coloring of `K_n` with colors drawn uniformly from `0..palette`.
pub fn random_coloring<R: Rng + ?Sized>(n: usize, palette: usize, rng: &mut R) -> EdgeColoring {
    assert!(palette > 0, "palette must be nonempty");
    EdgeColoring::from_fn(n, |_| rng.gen_range(0..palette) as Color)
}

/// Total coloring whose palette size is itself uniform in `1..=C(n,2)`.
pub fn random_coloring_any_palette<R: Rng + ?Sized>(n: usize, rng: &mut R) -> EdgeColoring {
    let palette = rng.gen_range(1..=pair_count(n).max(1));
    random_coloring(n, palette, rng)
}

/// Removes every edge through a vertex of degree in `1..min_degree`,
/// repeating until no such vertex is left.
fn prune_low_degree(edges: &mut Vec<VertexSet>, n: usize, min_degree: usize) {
    loop {
        let mut degree = vec![0usize; n];
        for e in edges.iter() {
            for &v in e.members() {
                degree[v] += 1;
            }
        }
        let low: BTreeSet<Vertex> = (0..n).filter(|&v| degree[v] > 0 && degree[v] < min_degree).collect();
        if low.is_empty() {
            return;
        }
        edges.retain(|e| e.members().iter().all(|v| !low.contains(v)));
    }
}

fn satisfies_freeness(h: &MultiHypergraph, ell: usize) -> Result<bool> {
    if !check_sk_free(h, 2 * ell, ell - 1)?.is_ok() {
        return Ok(false);
    }
    for i in 2..=ell - 2 {
        if !check_sk_free(h, 2 * i + 1, i)?.is_ok() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random simple 4-uniform hypergraph on `n` vertices in the restricted
/// family for `ell` (freeness properties plus the degree condition).
///
/// Half of the draws thin out the 13-point `K_4` design: random vertices and
/// blocks are deleted, and the survivors are placed on random labels. The
/// other half add random 4-sets one at a time while the freeness properties
/// hold. Both finish by pruning low-degree vertices, which keeps freeness.
pub fn random_restricted_hypergraph<R: Rng + ?Sized>(n: usize, ell: usize, rng: &mut R) -> Result<MultiHypergraph> {
    if ell < 3 {
        return Err(Error::range(format!("need ell >= 3, got {ell}")));
    }
    if !(4..=64).contains(&n) {
        return Err(Error::range(format!("need 4 <= n <= 64, got {n}")));
    }
    let mut edges: Vec<VertexSet>;
    if rng.gen_bool(0.5) {
        let design = make_design(13, DesignMode::Exact)?;
        let floor = 13usize.saturating_sub(n);
        let drop_count = rng.gen_range(floor..=(floor + 2).min(9));
        let dropped: BTreeSet<Vertex> = (0..13).choose_multiple(rng, drop_count).into_iter().collect();
        let keep = rng.gen_range(0.75..=1.0);
        edges = design
            .blocks()
            .iter()
            .filter(|b| b.members().iter().all(|v| !dropped.contains(v)))
            .filter(|_| rng.gen_bool(keep))
            .cloned()
            .collect();
        prune_low_degree(&mut edges, 13, ell - 1);
        // relabel the touched points injectively into 0..n, dropping blocks until they fit
        loop {
            let touched: BTreeSet<Vertex> = edges.iter().flat_map(|e| e.members().iter().copied()).collect();
            if touched.len() <= n {
                let mut labels: Vec<Vertex> = (0..n).collect();
                labels.shuffle(rng);
                let map: Vec<(Vertex, Vertex)> = touched.iter().copied().zip(labels).collect();
                let relabel = |v: Vertex| map.iter().find(|(a, _)| *a == v).expect("touched point").1;
                edges = edges
                    .iter()
                    .map(|e| VertexSet::new(e.members().iter().map(|&v| relabel(v))))
                    .collect();
                break;
            }
            let victim = rng.gen_range(0..edges.len());
            edges.remove(victim);
            prune_low_degree(&mut edges, 13, ell - 1);
        }
    } else {
        edges = Vec::new();
        let mut h = MultiHypergraph::new(n, Uniformity::Uniform(4))?;
        for _ in 0..rng.gen_range(5..60) {
            let mut quad: Vec<Vertex> = (0..n).choose_multiple(rng, 4);
            quad.sort_unstable();
            let e = VertexSet::new(quad);
            if edges.contains(&e) {
                continue;
            }
            let mut trial = h.clone();
            trial.add_edge(e.members().iter().copied(), 1)?;
            if satisfies_freeness(&trial, ell)? {
                h = trial;
                edges.push(e);
            }
        }
        prune_low_degree(&mut edges, n, ell - 1);
    }
    MultiHypergraph::from_edges(n, Uniformity::Uniform(4), edges.iter().map(|e| e.members().to_vec()))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::verify::check_defh_properties;

    #[test]
    fn restricted_samples_pass_the_checker() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut nonempty = 0;
        for i in 0..60 {
            let n = 10 + i % 9;
            let ell = 3 + i % 2;
            let h = random_restricted_hypergraph(n, ell, &mut rng).unwrap();
            assert!(check_defh_properties(&h, ell).unwrap().is_ok(), "{h:?}");
            if !h.is_empty() {
                nonempty += 1;
            }
        }
        assert!(nonempty >= 10, "only {nonempty} nonempty samples");
    }

    #[test]
    fn random_colorings_are_total() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = random_coloring(6, 3, &mut rng);
        assert!(c.is_total());
        assert!(c.palette_size() <= 3);
        let c = random_coloring_any_palette(5, &mut rng);
        assert!(c.palette_size() <= 10);
    }
}
