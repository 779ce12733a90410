mod common;

use std::sync::OnceLock;

use common::*;
use proptest::prelude::*;
use vclass_core::coaisle::xi_membership;
use vclass_core::cosilting::uniserial_in_class;
use vclass_core::filtrations::{enumerate, AdmissibleFiltration};
use vclass_core::ideals::{
    ideal_vocabulary, in_angle, uniserial_vocabulary, IdealPos, UniserialModule,
};
use vclass_core::spectrum::Spectrum;
use vclass_core::systems::{all_systems, AdmissibleSystem};

const CASES: u32 = 10_000;

struct World {
    spec: Spectrum,
    systems: Vec<AdmissibleSystem>,
    modules: Vec<UniserialModule>,
    ideals: Vec<IdealPos>,
    filtrations: Vec<AdmissibleFiltration>,
    /// `(i, j)` with system `i` nested in system `j`.
    nested: Vec<(usize, usize)>,
}

fn worlds() -> &'static [World] {
    static CELL: OnceLock<Vec<World>> = OnceLock::new();
    CELL.get_or_init(|| {
        flag_patterns(4)
            .into_iter()
            .map(|flags| {
                let spec = chain(&flags);
                let filtrations = if flags.len() <= 3 {
                    enumerate(&spec, (0, 1), 1_000_000).unwrap()
                } else {
                    Vec::new()
                };
                let systems = all_systems(&spec);
                let nested = (0..systems.len())
                    .flat_map(|i| (0..systems.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| systems[i].is_nested_in(&systems[j]))
                    .collect();
                World {
                    systems,
                    nested,
                    modules: uniserial_vocabulary(&spec),
                    ideals: ideal_vocabulary(&spec),
                    filtrations,
                    spec,
                }
            })
            .collect()
    })
}

fn pick<T>(items: &[T], seed: usize) -> &T {
    &items[seed % items.len()]
}

/// Candidates for the smaller (or larger) of the current candidates and `next`.
fn extreme<'a>(current: Vec<&'a IdealPos>, next: &'a IdealPos, smaller: bool) -> Vec<&'a IdealPos> {
    let mut out = Vec::new();
    for c in current {
        let (a, b) = if smaller { (next, c) } else { (c, next) };
        match a.to_submodule().is_subset(&b.to_submodule()) {
            Ok(true) => out.push(next),
            Ok(false) => out.push(c),
            Err(_) => out.extend([c, next]),
        }
    }
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn coaisles_grow_with_the_degree(w in any::<usize>(), f in any::<usize>(), m in any::<usize>(), n in -2i64..3) {
        let worlds: Vec<&World> = worlds().iter().filter(|w| !w.filtrations.is_empty()).collect();
        let world = pick(&worlds, w);
        let filtration = pick(&world.filtrations, f);
        let module = pick(&world.modules, m);
        if xi_membership(filtration, n, module).unwrap() {
            prop_assert!(xi_membership(filtration, n + 1, module).unwrap(),
                "{} leaves the coaisle between degrees {n} and {}", module.literal(&world.spec), n + 1);
        }
    }

    #[test]
    fn nested_systems_have_nested_classes(w in any::<usize>(), pair in any::<usize>(), m in any::<usize>()) {
        let world = pick(worlds(), w);
        let &(i, j) = pick(&world.nested, pair);
        let (small, big) = (&world.systems[i], &world.systems[j]);
        let module = pick(&world.modules, m);
        if uniserial_in_class(small, module).unwrap() {
            prop_assert!(uniserial_in_class(big, module).unwrap());
        }
    }

    #[test]
    fn angles_are_closed_under_meets_and_joins(w in any::<usize>(), x in any::<usize>(), picks in prop::collection::vec(any::<usize>(), 1..5)) {
        let world = pick(worlds(), w);
        let nonempty: Vec<&AdmissibleSystem> = world.systems.iter().filter(|x| !x.is_empty()).collect();
        let system = pick(&nonempty, x);
        let Some(intervals) = system.intervals() else { unreachable!() };
        let in_some_angle = |i: &IdealPos| intervals.iter().any(|c| in_angle(i, c));
        let angled: Vec<&IdealPos> = world.ideals.iter().filter(|i| in_some_angle(i)).collect();
        let family: Vec<&IdealPos> = picks.iter().map(|&s| *pick(&angled, s)).collect();
        // On a chain the meet and join of a family are members of it; when
        // two tokens are symbolically incomparable either may be the one.
        let mut meets = vec![family[0]];
        let mut joins = vec![family[0]];
        for &i in &family[1..] {
            meets = extreme(meets, i, true);
            joins = extreme(joins, i, false);
        }
        prop_assert!(meets.iter().all(|i| in_some_angle(i)));
        prop_assert!(joins.iter().all(|i| in_some_angle(i)));
    }

    #[test]
    fn locate_matches_the_brute_force_branch(w in any::<usize>(), x in any::<usize>(), i in any::<usize>()) {
        let world = pick(worlds(), w);
        let system = pick(&world.systems, x);
        let ideal = pick(&world.ideals, i);
        let (lo, hi, is_prime) = ideal_bounds(ideal);
        let branches = brute_branches(&pairs_of(system), lo, hi, is_prime);
        prop_assert_eq!(branches.len(), 1);
        prop_assert!(system.locate(ideal).is_ok());
    }

    #[test]
    fn hulls_are_idempotent_and_keep_gaps(w in any::<usize>(), x in any::<usize>()) {
        let world = pick(worlds(), w);
        let system = pick(&world.systems, x);
        let hull = system.hull();
        prop_assert!(hull.is_valid());
        prop_assert!(hull.is_nowhere_dense());
        prop_assert_eq!(hull.hull(), hull.clone());
        prop_assert_eq!(hull.gaps(), system.gaps());
    }
}
