mod common;

use common::{binom2, is_pq, palette};
use genramsey::bounds::{certify_h4_pair_count, q_quad};
use genramsey::construct::{
    coloring_614, make_design, quad_coloring_from_hypergraph, quad_coloring_traced, DesignMode, Six14Route,
    SUPPORTED_EXACT,
};
use genramsey::sample::random_restricted_hypergraph;
use genramsey::verify::{check_defh_properties, six14_structure};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn six14_colorings_for_every_small_n() {
    for n in 4..=30 {
        let built = coloring_614(n).unwrap();
        let c = &built.coloring;
        assert!(c.is_total());
        assert!(is_pq(c, 6, 14), "n = {n} via {:?}", built.route);
        assert_eq!(palette(c), binom2(n) - built.design.blocks().len(), "n = {n}");
        assert!(six14_structure(c).unwrap().is_consistent(), "n = {n}");
        if SUPPORTED_EXACT.contains(&n) {
            assert_eq!(built.route, Six14Route::Perfect);
            // a perfect packing meets the ceiling of 5/6 C(n,2)
            assert_eq!(palette(c), (5 * binom2(n)).div_ceil(6), "n = {n}");
        }
    }
}

#[test]
fn packings_share_no_pair() {
    for n in [13, 16, 25, 28, 11, 20] {
        let mode = if SUPPORTED_EXACT.contains(&n) { DesignMode::Exact } else { DesignMode::Greedy };
        let d = make_design(n, mode).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for b in d.blocks() {
            assert_eq!(b.len(), 4);
            for pair in b.members().iter().tuple_combinations::<(_, _)>() {
                assert!(seen.insert(pair), "pair {pair:?} covered twice for n = {n}");
            }
        }
        assert_eq!(d.is_perfect(), seen.len() == binom2(n));
    }
}

#[test]
fn random_restricted_hypergraphs_drive_the_quadratic_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nontrivial = 0;
    for i in 0..80 {
        let n = 8 + i % 7;
        let ell = 3 + (i / 7) % 2;
        let h = random_restricted_hypergraph(n, ell, &mut rng).unwrap();
        assert!(check_defh_properties(&h, ell).unwrap().is_ok());
        let (c, traces) = quad_coloring_traced(&h, ell).unwrap();
        assert_eq!(palette(&c), binom2(n) - h.total_edges());
        assert!(is_pq(&c, 2 * ell, q_quad(2 * ell)), "n = {n}, ell = {ell}");
        for trace in &traces {
            for step in &trace.steps {
                assert!(step.union_size <= 2 * ell);
            }
        }
        let (verdict, cert) = certify_h4_pair_count(&h, ell).unwrap();
        assert!(verdict.is_ok());
        assert_eq!(cert.edges, h.total_edges());
        if !h.is_empty() {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn design_hypergraph_gives_the_thirteen_point_coloring() {
    let h = make_design(13, DesignMode::Exact).unwrap().to_hypergraph();
    let c = quad_coloring_from_hypergraph(&h, 3).unwrap();
    assert_eq!(palette(&c), 78 - 13);
    assert!(is_pq(&c, 6, 14));
}
