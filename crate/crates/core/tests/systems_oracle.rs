mod common;

use common::*;
use vclass_core::filtrations::for_each_filtration;
use vclass_core::ideals::ideal_vocabulary;
use vclass_core::spectrum::{ExtPrime, Spectrum};
use vclass_core::systems::{all_systems, Location};

#[test]
fn enumeration_matches_brute_force_on_all_small_chains() {
    for flags in flag_patterns(4) {
        let spec = chain(&flags);
        let mut got: Vec<Vec<Pair>> = all_systems(&spec).iter().map(pairs_of).collect();
        got.sort();
        let mut want = brute_systems(&flags);
        want.sort();
        assert_eq!(got, want, "flags {flags:?}");
    }
}

#[test]
fn frozen_counts() {
    assert_eq!(all_systems(&Spectrum::two_point(true)).len(), 5);
    assert_eq!(all_systems(&Spectrum::two_point(false)).len(), 3);
    assert_eq!(all_systems(&chain(&[true, true, true])).len(), 13);
    let two = Spectrum::two_point(true);
    assert_eq!(for_each_filtration(&two, (0, 0), 1000, |_| {}).unwrap(), 5);
    assert_eq!(for_each_filtration(&two, (0, 1), 1000, |_| {}).unwrap(), 14);
}

#[test]
fn nesting_and_filtration_counts_match_brute_force() {
    for flags in flag_patterns(3) {
        let spec = chain(&flags);
        let systems = all_systems(&spec);
        for x in &systems {
            for y in &systems {
                assert_eq!(
                    x.is_nested_in(y),
                    brute_nested(&pairs_of(x), &pairs_of(y)),
                    "{x} in {y}"
                );
            }
        }
        let brute = brute_systems(&flags);
        for len in 1..=3 {
            let count = for_each_filtration(&spec, (0, len as i64 - 1), 1_000_000, |_| {}).unwrap();
            assert_eq!(
                count,
                brute_chain_count(&brute, len),
                "flags {flags:?}, length {len}"
            );
        }
    }
}

#[test]
fn locate_takes_exactly_the_brute_force_branch() {
    for flags in flag_patterns(4) {
        let spec = chain(&flags);
        for x in all_systems(&spec) {
            let pairs = pairs_of(&x);
            for ideal in ideal_vocabulary(&spec) {
                let (lo, hi, is_prime) = ideal_bounds(&ideal);
                let branches = brute_branches(&pairs, lo, hi, is_prime);
                assert_eq!(
                    branches.len(),
                    1,
                    "{x} / {}: {branches:?}",
                    ideal.literal(&spec)
                );
                let got = match x.locate(&ideal).unwrap() {
                    Location::InInterval(c) => {
                        Branch::Interval((position(&c.lower), position(&c.upper)))
                    }
                    Location::InGap(g) => {
                        let bound = |e: &ExtPrime| e.as_prime().map(position);
                        Branch::Gap(bound(&g.below), bound(&g.above))
                    }
                };
                assert_eq!(got, branches[0], "{x} / {}", ideal.literal(&spec));
            }
        }
    }
}

#[test]
fn gap_example_on_three_chain() {
    let spec = chain(&[true, true, true]);
    let x = build(&spec, &[(0, 0), (2, 2)]);
    assert_eq!(x.gaps().literals(&spec), ["(0,b)"]);
}

#[test]
fn idempotency_violation_is_reported() {
    let spec = chain(&[true, false, true]);
    let bad = vclass_core::systems::AdmissibleSystem::named(&spec, &[("a", "b")]);
    match bad {
        Err(_) => {}
        Ok(x) => assert!(!x.is_valid()),
    }
}
