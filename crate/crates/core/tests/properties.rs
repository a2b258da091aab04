mod common;

use common::{has_configuration, induced, is_pq, repeats};
use genramsey::io::{parse_coloring, parse_hypergraph, write_coloring, write_hypergraph};
use genramsey::repeat::{build_repeat_quadratic, check_faithfulness, PaddingRule, RepeatBuildPolicy};
use genramsey::sample::random_coloring;
use genramsey::verify::{check_pq_coloring, check_sk_free, check_sk_free_with, SkStrategy};
use genramsey::{EdgeColoring, MultiHypergraph, Uniformity};
use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coloring_strategy(max_n: usize) -> impl Strategy<Value = EdgeColoring> {
    (2..=max_n, 1usize..12, any::<u64>()).prop_map(|(n, palette, seed)| {
        random_coloring(n, palette, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

fn hypergraph_strategy() -> impl Strategy<Value = MultiHypergraph> {
    (4usize..=8, 3usize..=4, prop::collection::vec((any::<u64>(), 1u32..3), 0..8)).prop_map(|(n, r, picks)| {
        let all: Vec<Vec<usize>> = (0..n).combinations(r).collect();
        let mut h = MultiHypergraph::new(n, Uniformity::Uniform(r)).unwrap();
        for (pick, mult) in picks {
            h.add_edge(all[(pick % all.len() as u64) as usize].iter().copied(), mult).unwrap();
        }
        h
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn repeat_edges_never_exceed_repeats(c in coloring_strategy(8)) {
        prop_assume!(c.n() >= 4);
        let n = c.n();
        for padding in [PaddingRule::Strict, PaddingRule::Padded] {
            let policy = RepeatBuildPolicy { padding, ..Default::default() };
            let h = build_repeat_quadratic(&c, &policy).unwrap();
            for size in 0..=n {
                for s in (0..n).combinations(size) {
                    prop_assert!(induced(&h, &s) <= repeats(&c, &s));
                }
            }
            let all: Vec<usize> = (0..n).collect();
            prop_assert_eq!(induced(&h, &all), repeats(&c, &all));
        }
        let padded = build_repeat_quadratic(&c, &RepeatBuildPolicy::padded()).unwrap();
        prop_assert!(check_faithfulness(&c, &padded, PaddingRule::Padded).unwrap().is_ok());
    }

    #[test]
    fn pq_checker_matches_enumeration(c in coloring_strategy(7), p in 2usize..=5, q in 1usize..=10) {
        prop_assume!(p <= c.n() && q >= 2 && q <= p * (p - 1) / 2);
        prop_assert_eq!(check_pq_coloring(&c, p, q).unwrap().is_ok(), is_pq(&c, p, q));
    }

    #[test]
    fn pq_witness_is_a_real_violation(c in coloring_strategy(7), p in 3usize..=5, q in 2usize..=8) {
        prop_assume!(p <= c.n() && q <= p * (p - 1) / 2);
        if let Some(w) = check_pq_coloring(&c, p, q).unwrap().witness() {
            let s = w.subset.members().to_vec();
            prop_assert_eq!(s.len(), p);
            prop_assert!(common::colors_in(&c, &s).unwrap() < q);
        }
    }

    #[test]
    fn sk_checker_matches_enumeration(h in hypergraph_strategy(), s in 3usize..=7, k in 1usize..=4) {
        prop_assume!(s <= h.n() && s >= h.uniformity().code());
        let expected = !has_configuration(&h, s, k);
        prop_assert_eq!(check_sk_free(&h, s, k).unwrap().is_ok(), expected);
        for strategy in [SkStrategy::VertexSubsets, SkStrategy::EdgeUnions] {
            prop_assert_eq!(check_sk_free_with(&h, s, k, strategy).unwrap().is_ok(), expected);
        }
    }

    #[test]
    fn coloring_text_roundtrips(c in coloring_strategy(9)) {
        let text = write_coloring(&c);
        let back = parse_coloring(&text).unwrap();
        prop_assert_eq!(&back, &c.normalized());
        prop_assert_eq!(write_coloring(&back), text);
    }

    #[test]
    fn hypergraph_text_roundtrips(h in hypergraph_strategy()) {
        let text = write_hypergraph(&h);
        let back = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(write_hypergraph(&back), text);
    }

    #[test]
    fn normalizing_keeps_every_color_count(c in coloring_strategy(7)) {
        let d = c.normalized();
        prop_assert!(d.is_normalized());
        for s in (0..c.n()).combinations(4.min(c.n())) {
            prop_assert_eq!(common::colors_in(&c, &s), common::colors_in(&d, &s));
        }
    }
}
