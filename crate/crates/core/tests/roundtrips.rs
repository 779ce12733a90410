mod common;

use common::*;
use vclass_core::coaisle::{
    chain_to_filtration, filtration_to_chain, theta_recover, xi_membership,
    xi_membership_homological,
};
use vclass_core::cosilting::{class_equals_tor_description, recover_system, uniserial_in_class};
use vclass_core::filtrations::for_each_filtration;
use vclass_core::ideals::{cyclic_vocabulary, uniserial_vocabulary};
use vclass_core::systems::all_systems;

#[test]
fn systems_are_recovered_from_their_classes() {
    for flags in flag_patterns(4) {
        let spec = chain(&flags);
        for x in all_systems(&spec) {
            let back = recover_system(&spec, |m| uniserial_in_class(&x, m)).unwrap();
            assert_eq!(back, x, "flags {flags:?}");
        }
    }
}

#[test]
fn tor_table_has_no_mismatches() {
    for flags in flag_patterns(4) {
        let spec = chain(&flags);
        let ideals = cyclic_vocabulary(&spec);
        for x in all_systems(&spec) {
            let report = class_equals_tor_description(&x, &ideals).unwrap();
            assert!(report.mismatches.is_empty(), "{x}: {:?}", report.mismatches);
            assert_eq!(report.rows.len(), ideals.len());
        }
    }
}

#[test]
fn nested_systems_have_nested_classes() {
    for flags in flag_patterns(3) {
        let spec = chain(&flags);
        let systems = all_systems(&spec);
        let sweeps: Vec<Vec<bool>> = systems
            .iter()
            .map(|x| membership_sweep(&spec, |m| uniserial_in_class(x, m).unwrap()))
            .collect();
        for (i, x) in systems.iter().enumerate() {
            for (j, y) in systems.iter().enumerate() {
                if x.is_nested_in(y) {
                    let inside = sweeps[i].iter().zip(&sweeps[j]).all(|(a, b)| !a || *b);
                    assert!(inside, "{x} ⊑ {y} but the classes are not nested");
                }
            }
        }
    }
}

#[test]
fn filtrations_are_recovered_from_their_coaisles() {
    for flags in [
        vec![true, true],
        vec![true, false],
        vec![true, true, true],
        vec![true, false, true],
    ] {
        let spec = chain(&flags);
        for len in 1..=3 {
            let window = (0, len - 1);
            for_each_filtration(&spec, window, 1_000_000, |f| {
                let back = theta_recover(&spec, window, |n, m| xi_membership(f, n, m)).unwrap();
                assert_eq!(back.literal(), f.literal(), "flags {flags:?}");
            })
            .unwrap();
        }
    }
}

#[test]
fn both_coaisle_tests_agree() {
    let spec = chain(&[true, true, true]);
    let modules = uniserial_vocabulary(&spec);
    for_each_filtration(&spec, (0, 1), 1_000_000, |f| {
        for n in f.probe_degrees() {
            for m in &modules {
                assert_eq!(
                    xi_membership(f, n, m).unwrap(),
                    xi_membership_homological(f, n, m).unwrap(),
                    "{} at {n} on {}",
                    f.literal(),
                    m.literal(&spec)
                );
            }
        }
    })
    .unwrap();
}

#[test]
fn chains_of_epimorphisms_round_trip() {
    let spec = chain(&[true, true, true]);
    for_each_filtration(&spec, (0, 1), 1_000_000, |f| {
        let c = filtration_to_chain(f).unwrap();
        let back = chain_to_filtration(&c).unwrap();
        assert_eq!(back.literal(), f.literal());
    })
    .unwrap();
}
