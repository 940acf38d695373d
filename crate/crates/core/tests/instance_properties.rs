mod common;

use std::collections::BTreeSet;

use goldbach_grover::instance::{build_instance, GoldbachInstance, InstanceError};
use goldbach_grover::RECORD_BASE;
use proptest::prelude::*;

/// Aux table by brute force: every `N - p` prime with `p` an odd prime up to
/// `pmax` and `N` in the sample.
fn brute_aux(evens: &[u64], pmax: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for &n in evens {
        for p in (3..=pmax.min(n / 2)).step_by(2) {
            if common::bpsw(p) && common::bpsw(n - p) {
                out.insert(n - p);
            }
        }
    }
    out
}

fn first_buildable(base: u64, count: usize, pmax: u64) -> Option<GoldbachInstance> {
    (3..=pmax)
        .filter(|&p| common::bpsw(p))
        .find_map(|p| build_instance(base, count, pmax, p).ok())
}

#[test]
fn record_instance() {
    let inst = build_instance(RECORD_BASE, 51, 307, 223).unwrap();
    assert_eq!(inst.size(), 51);
    assert_eq!(inst.evens()[0], RECORD_BASE + 2);
    assert_eq!(inst.evens()[50], RECORD_BASE + 102);
    assert_eq!(inst.match_position(), 7);
    assert_eq!(inst.matching_even(), RECORD_BASE + 14);
    assert_eq!(inst.matching_partner(), RECORD_BASE - 209);
    assert_eq!(inst.aux_count(), 7);
    let brute = brute_aux(inst.evens(), 307);
    assert_eq!(inst.aux_primes(), brute.into_iter().collect::<Vec<_>>().as_slice());
    assert_eq!(inst.e_levels().first(), Some(&-239));
    assert_eq!(inst.e_levels().last(), Some(&69));
    assert_eq!(inst.detuning(inst.match_g_index(), inst.match_e_index()), 0);
    assert!(inst.sample_size_warning().is_some());
}

#[test]
fn neighbouring_drive_primes_match_elsewhere() {
    assert!(matches!(
        build_instance(RECORD_BASE, 51, 307, 233),
        Ok(ref i) if i.matching_even() == RECORD_BASE + 24
    ));
}

#[test]
fn aux_table_matches_brute_force_at_a_million() {
    let mut found = 0;
    for count in 2..=6 {
        for pmax in [30u64, 60, 120] {
            if let Some(inst) = first_buildable(1_000_000, count, pmax) {
                found += 1;
                let brute: Vec<u64> = brute_aux(inst.evens(), pmax).into_iter().collect();
                assert_eq!(inst.aux_primes(), brute.as_slice());
                let p = inst.p_drive();
                let hits: Vec<u64> = inst
                    .evens()
                    .iter()
                    .copied()
                    .filter(|&n| common::bpsw(n - p))
                    .collect();
                assert_eq!(hits, vec![inst.matching_even()]);
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn multiple_matches_are_reported_with_every_even() {
    match build_instance(100, 3, 13, 3) {
        Err(InstanceError::MultipleMatches { evens, .. }) => {
            assert!(evens.len() >= 2);
            for n in evens {
                assert!(common::bpsw(n - 3));
            }
        }
        other => panic!("expected multiple matches, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn detunings_are_even_and_vanish_only_at_the_match(
        half in 500u64..5_000_000, count in 2usize..8, pmax in 20u64..200,
    ) {
        if let Some(inst) = first_buildable(2 * half, count, pmax) {
            for g in 0..inst.size() {
                for e in 0..inst.aux_count() {
                    let d = inst.detuning(g, e);
                    prop_assert_eq!(d % 2, 0);
                    prop_assert_eq!(
                        d == 0,
                        g == inst.match_g_index() && e == inst.match_e_index()
                    );
                }
            }
        }
    }

    #[test]
    fn shift_preserves_detunings_and_roundtrips(
        half in 500u64..5_000_000, count in 2usize..8, shift in 0u64..200,
    ) {
        if let Some(inst) = first_buildable(2 * half, count, 100) {
            let c = inst.base() - 300 + 2 * shift;
            if let Ok(moved) = inst.shift_energies(c) {
                prop_assert_eq!(moved.energy_offset(), c);
                for g in 0..inst.size() {
                    for e in 0..inst.aux_count() {
                        prop_assert_eq!(moved.detuning(g, e), inst.detuning(g, e));
                    }
                }
                let back = GoldbachInstance::from_json(&moved.to_json()).unwrap();
                prop_assert_eq!(back, moved);
            }
        }
    }
}
