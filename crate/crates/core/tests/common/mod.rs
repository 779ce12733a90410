//! Brute-force oracles shared by the integration tests and the acceptance
//! runner. They work on plain index pairs over a finite chain and share no
//! code with the library's decision procedures.

#![allow(dead_code)]

use vclass_core::ideals::{uniserial_vocabulary, IdealPos};
use vclass_core::spectrum::{Point, Prime, Spectrum};
use vclass_core::systems::{AdmissibleSystem, Interval};

/// An interval `[lower, upper]` as positions in the chain.
pub type Pair = (usize, usize);

pub const NAMES: [&str; 5] = ["0", "a", "b", "c", "d"];

/// A finite chain with the given idempotency flags (the first must be true).
pub fn chain(flags: &[bool]) -> Spectrum {
    let primes = flags
        .iter()
        .enumerate()
        .map(|(i, &f)| (NAMES[i].to_string(), f))
        .collect();
    Spectrum::finite_chain(primes).expect("valid chain")
}

/// Every idempotency pattern of every chain with `1..=max_len` primes.
pub fn flag_patterns(max_len: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for mask in 0..(1u32 << (len - 1)) {
            let mut flags = vec![true];
            flags.extend((1..len).map(|i| mask & (1 << (i - 1)) == 0));
            out.push(flags);
        }
    }
    out
}

/// All admissible systems over a chain with the given flags, by testing
/// every subset of intervals against the axioms directly. On a finite chain
/// completeness holds for every subset, so only disjointness and
/// idempotency of the lower bounds need checking.
pub fn brute_systems(flags: &[bool]) -> Vec<Vec<Pair>> {
    let n = flags.len();
    let all: Vec<Pair> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << all.len()) {
        let chosen: Vec<Pair> = (0..all.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| all[k])
            .collect();
        let idempotent = chosen.iter().all(|&(i, _)| flags[i]);
        let disjoint = chosen.iter().all(|&(a, b)| {
            chosen
                .iter()
                .all(|&(c, d)| (a, b) == (c, d) || b < c || d < a)
        });
        if idempotent && disjoint {
            let mut chosen = chosen;
            chosen.sort();
            out.push(chosen);
        }
    }
    out
}

pub fn position(p: &Prime) -> usize {
    match p.point() {
        Point::Index(i) => *i,
        other => panic!("not a chain prime: {other:?}"),
    }
}

pub fn prime_at(spec: &Spectrum, i: usize) -> Prime {
    spec.primes().expect("finite")[i].clone()
}

pub fn build(spec: &Spectrum, pairs: &[Pair]) -> AdmissibleSystem {
    let intervals = pairs
        .iter()
        .map(|&(i, j)| Interval::new(spec, prime_at(spec, i), prime_at(spec, j)).expect("ordered"))
        .collect();
    AdmissibleSystem::finite(spec, intervals).expect("admissible")
}

pub fn pairs_of(x: &AdmissibleSystem) -> Vec<Pair> {
    let mut v: Vec<Pair> = x
        .intervals()
        .expect("finite list")
        .iter()
        .map(|c| (position(&c.lower), position(&c.upper)))
        .collect();
    v.sort();
    v
}

/// Every interval of `small` lies inside an interval of `big`.
pub fn brute_nested(small: &[Pair], big: &[Pair]) -> bool {
    small
        .iter()
        .all(|&(i, j)| big.iter().any(|&(k, l)| k <= i && j <= l))
}

/// Number of nested sequences `X_1 ⊑ … ⊑ X_len` drawn from `systems`.
pub fn brute_chain_count(systems: &[Vec<Pair>], len: usize) -> u64 {
    let mut counts = vec![1u64; systems.len()];
    for _ in 1..len {
        counts = (0..systems.len())
            .map(|j| {
                (0..systems.len())
                    .filter(|&i| brute_nested(&systems[i], &systems[j]))
                    .map(|i| counts[i])
                    .sum()
            })
            .collect();
    }
    counts.iter().sum()
}

/// Where an ideal can sit relative to a finite system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    Interval(Pair),
    /// Bounds of a gap; `None` stands for −∞ below and for `R` above.
    Gap(Option<usize>, Option<usize>),
}

/// Every branch containing the ideal with `lo ⊆ I ⊆ hi` (`lo = hi` for a
/// prime, `lo ⊊ I ⊊ hi` otherwise). Intervals contain `I` when
/// `p ⊆ lo` and `hi ⊆ q`; gaps `(a, b)` strictly contain it when
/// `a ⊊ I ⊊ b`.
pub fn brute_branches(pairs: &[Pair], lo: usize, hi: usize, is_prime: bool) -> Vec<Branch> {
    let mut out: Vec<Branch> = pairs
        .iter()
        .filter(|&&(p, q)| p <= lo && hi <= q)
        .map(|&p| Branch::Interval(p))
        .collect();
    let mut bounds: Vec<(Option<usize>, Option<usize>)> = Vec::new();
    let mut prev = None;
    for &(p, q) in pairs {
        bounds.push((prev, Some(p)));
        prev = Some(q);
    }
    bounds.push((prev, None));
    for (a, b) in bounds {
        let above_a = match a {
            None => true,
            Some(a) if is_prime => a < lo,
            Some(a) => a <= lo,
        };
        let below_b = match b {
            None => true,
            Some(b) if is_prime => hi < b,
            Some(b) => hi <= b,
        };
        if above_a && below_b {
            out.push(Branch::Gap(a, b));
        }
    }
    out
}

pub fn ideal_bounds(ideal: &IdealPos) -> (usize, usize, bool) {
    (position(&ideal.lo), position(&ideal.hi), ideal.is_prime)
}

/// Membership of every module of the uniserial vocabulary, in vocabulary
/// order, as decided by `member`.
pub fn membership_sweep(
    spec: &Spectrum,
    member: impl FnMut(&vclass_core::ideals::UniserialModule) -> bool,
) -> Vec<bool> {
    uniserial_vocabulary(spec).iter().map(member).collect()
}
