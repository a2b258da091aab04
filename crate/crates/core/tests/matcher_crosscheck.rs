mod common;

use genramsey::bounds::q_lin;
use genramsey::matcher::{audit_configuration, find_avoiding_coloring, is_proper, ConfigurationTracker};
use genramsey::{Color, Pair};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// After every assignment, the tracker's answer for a sample of candidate
/// pairs and every color must match a full re-audit of the extended coloring.
fn cross_check(n: usize, p: usize, palette: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tracker = ConfigurationTracker::new(n, p, palette).unwrap();
    let mut order: Vec<Pair> = Pair::all(n).collect();
    order.shuffle(&mut rng);
    for (step, &pair) in order.iter().enumerate() {
        let current = tracker.coloring();
        for &probe in order[step..].iter().take(3) {
            for color in 0..palette as Color {
                let mut trial = current.clone();
                trial.set(probe, color).unwrap();
                let brute = is_proper(&trial) && audit_configuration(&trial, p).unwrap().is_ok();
                assert_eq!(
                    tracker.admits(probe, color),
                    brute,
                    "n={n} p={p} seed={seed} step={step} probe={probe} color={color}"
                );
            }
        }
        let admissible: Vec<Color> = (0..palette as Color).filter(|&c| tracker.admits(pair, c)).collect();
        let Some(&color) = admissible.get(rng.gen_range(0..admissible.len().max(1))) else {
            return;
        };
        tracker.assign(pair, color).unwrap();
        let c = tracker.coloring();
        assert!(is_proper(&c));
        assert!(audit_configuration(&c, p).unwrap().is_ok());
    }
}

#[test]
fn incremental_checker_agrees_with_audit() {
    for n in 5..=10 {
        for p in [4, 5, 6] {
            for seed in 0..3 {
                cross_check(n, p, n + 1, seed * 31 + n as u64);
            }
        }
    }
}

#[test]
fn found_colorings_meet_the_linear_threshold() {
    for (n, p, k) in [(8, 4, 9), (9, 4, 10), (10, 5, 11), (12, 4, 12)] {
        let run = find_avoiding_coloring(n, p, k, 0, 100).unwrap();
        let c = run.coloring;
        assert!(c.is_total());
        assert!(is_proper(&c));
        assert!(common::palette(&c) <= k);
        assert!(common::is_pq(&c, p, q_lin(p)), "({n},{p},{k})");
        assert!(audit_configuration(&c, p).unwrap().is_ok());
    }
}

#[test]
fn same_seed_same_coloring() {
    let a = find_avoiding_coloring(10, 4, 11, 9, 50).unwrap();
    let b = find_avoiding_coloring(10, 4, 11, 9, 50).unwrap();
    assert_eq!(a.coloring, b.coloring);
    assert_eq!(a.restarts_used, b.restarts_used);
}
