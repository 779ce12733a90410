//! Membership of standard uniserial modules in the cosilting class of an
//! admissible system, the homological vanishing tests, and recovery of a
//! system from a membership oracle.

use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::ideals::UniserialModule;
use crate::ideals::{colon, f_part, gamma_part, is_q_divisible, soc_part, QSubmodule, RIdeal};
use crate::spectrum::{ExtPrime, Prime, Spectrum};
use crate::systems::{AdmissibleSystem, Gap, Interval};

/// The two-term complex `p → R_q`, named by its bounds. `below = −∞` gives
/// the stalk `p` in degree 0; `above = R` uses the ring itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KComplexRef {
    pub below: ExtPrime,
    pub above: ExtPrime,
}

impl From<&Gap> for KComplexRef {
    fn from(g: &Gap) -> Self {
        KComplexRef {
            below: g.below.clone(),
            above: g.above.clone(),
        }
    }
}

impl KComplexRef {
    pub fn literal(&self, spec: &Spectrum) -> String {
        format!(
            "K({},{})",
            spec.ext_name(&self.below),
            spec.ext_name(&self.above)
        )
    }
}

/// `Tor₁(R_q/p, R/I) = 0`.
pub fn tor1_vanishes(spec: &Spectrum, q: &Prime, p: &Prime, ideal: &RIdeal) -> Result<bool> {
    spec.check(q)?;
    spec.check(p)?;
    if !p.is_idempotent() {
        return Err(Error::NotIdempotent(spec.name(p)));
    }
    let RIdeal::Proper(i) = ideal else {
        return Ok(true);
    };
    if *p <= i.lo {
        return Ok(true);
    }
    Ok(i.attached <= *p && !(i.iso_loc && i.attached == *p))
}

/// `H⁰(K(q,p) ⊗ M) = 0`, i.e. `Γ_q(M) ⊆ Soc_p(M)`.
pub fn h0_vanishes(k: &KComplexRef, m: &UniserialModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let torsion_num = match &k.below {
        ExtPrime::Prime(q) => gamma_part(m, q)?.num,
        _ => m.num.clone(),
    };
    let socle_num = match &k.above {
        ExtPrime::Prime(p) => soc_part(m, p)?.num,
        _ => m.den.clone(),
    };
    torsion_num.is_subset(&socle_num)
}

/// `H¹(K(q,p) ⊗ M) = 0`, i.e. `F_q(M)` is an `R_q`-module.
pub fn h1_vanishes(spec: &Spectrum, k: &KComplexRef, m: &UniserialModule) -> Result<bool> {
    match &k.below {
        ExtPrime::Prime(q) => Ok(is_q_divisible(spec, &f_part(m, q)?, q)),
        _ => Ok(true),
    }
}

/// `R_q/p ⊗ M = 0`.
pub fn tensor_vanishes(q: &Prime, p: &Prime, m: &UniserialModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let num = m.num.localize(q);
    let den = m.den.localize(q);
    if num.is_subset(&den)? {
        return Ok(true);
    }
    num.is_subset(&num.product(&QSubmodule::prime(p)))
}

/// `R/I` lies in the class: the annihilator lies in the cell of some interval.
pub fn cyclic_in_class(system: &AdmissibleSystem, ideal: &RIdeal) -> bool {
    match ideal {
        RIdeal::Whole => true,
        RIdeal::Proper(i) => system.interval_within(&i.lo, &i.attached).is_some(),
    }
}

/// `J/I` lies in the class: some interval `χ` has `p_χ ⊆ (I : J)` and
/// `I^# ⊆ q_χ`.
pub fn uniserial_in_class(system: &AdmissibleSystem, m: &UniserialModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let spec = system.spectrum();
    let RIdeal::Proper(ann) = colon(spec, &m.den, &m.num)? else {
        return Ok(true);
    };
    Ok(system.interval_within(&ann.lo, m.den.attached()).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorRow {
    pub ideal: String,
    pub in_class: bool,
    pub homological: bool,
}

/// Truth table comparing interval membership of cyclic modules with the
/// homological description through gaps and dense subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorReport {
    pub gaps: Vec<String>,
    /// Intervals of the chosen dense subsets; always rational parameters.
    pub dense_subsets: Vec<String>,
    pub rows: Vec<TorRow>,
    pub mismatches: Vec<String>,
}

pub fn class_equals_tor_description(
    system: &AdmissibleSystem,
    ideals: &[RIdeal],
) -> Result<TorReport> {
    let spec = system.spectrum();
    if !system.is_finite_list() {
        return Err(Error::Unsupported(
            "the truth table needs a finite list of intervals".into(),
        ));
    }
    let hull = system.hull();
    let gaps: Vec<KComplexRef> = hull.gaps().explicit.iter().map(KComplexRef::from).collect();
    // A finite list has no dense classes, so no Tor conditions arise.
    let mut report = TorReport {
        gaps: gaps.iter().map(|g| g.literal(spec)).collect(),
        dense_subsets: Vec::new(),
        rows: Vec::new(),
        mismatches: Vec::new(),
    };
    for ideal in ideals {
        let m = UniserialModule::cyclic(spec, ideal);
        let in_class = cyclic_in_class(system, ideal);
        let mut homological = true;
        for g in &gaps {
            homological &= h0_vanishes(g, &m)?;
        }
        let literal = ideal.literal(spec);
        if in_class != homological {
            report.mismatches.push(format!(
                "R/{literal}: interval {in_class}, homological {homological}"
            ));
        }
        report.rows.push(TorRow {
            ideal: literal,
            in_class,
            homological,
        });
    }
    Ok(report)
}

/// Every vanishing predicate of one module against a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleTable {
    pub module: String,
    pub in_class: bool,
    pub h0: Vec<(String, bool)>,
    pub h1: Vec<(String, bool)>,
    pub tensor: Vec<(String, bool)>,
}

pub fn module_table(system: &AdmissibleSystem, m: &UniserialModule) -> Result<ModuleTable> {
    let spec = system.spectrum();
    let intervals = system.intervals().ok_or_else(|| {
        Error::Unsupported("module tables need a finite list of intervals".into())
    })?;
    let gaps: Vec<KComplexRef> = system
        .gaps()
        .explicit
        .iter()
        .map(KComplexRef::from)
        .collect();
    let mut table = ModuleTable {
        module: m.literal(spec),
        in_class: uniserial_in_class(system, m)?,
        h0: Vec::new(),
        h1: Vec::new(),
        tensor: Vec::new(),
    };
    for g in &gaps {
        table.h0.push((g.literal(spec), h0_vanishes(g, m)?));
        table.h1.push((g.literal(spec), h1_vanishes(spec, g, m)?));
    }
    for chi in &intervals {
        table.tensor.push((
            chi.literal(spec),
            tensor_vanishes(&chi.upper, &chi.lower, m)?,
        ));
    }
    Ok(table)
}

/// Recovers the system of a class on a finite spectrum.
pub fn recover_system(
    spec: &Spectrum,
    oracle: impl Fn(&UniserialModule) -> Result<bool>,
) -> Result<AdmissibleSystem> {
    let primes = spec.primes().ok_or_else(|| {
        Error::Unsupported("recovery on an infinite spectrum needs a probe list".into())
    })?;
    recover_system_on(spec, &primes, oracle)
}

/// Recovers a system using infima and suprema over the given primes only.
/// Exact when every bound of the class occurs among `probes`.
pub fn recover_system_on(
    spec: &Spectrum,
    probes: &[Prime],
    oracle: impl Fn(&UniserialModule) -> Result<bool>,
) -> Result<AdmissibleSystem> {
    let mut probes = probes.to_vec();
    probes.sort();
    probes.dedup();
    let mut kernel = Vec::new();
    for p in &probes {
        if oracle(&UniserialModule::residue_field(p))? {
            kernel.push(p.clone());
        }
    }
    let mut intervals = Vec::new();
    for p in &kernel {
        let mut lower = None;
        for q in &kernel {
            if oracle(&UniserialModule::interval(q, p))? {
                lower = Some(q.clone());
                break;
            }
        }
        let lower = lower.ok_or_else(|| {
            Error::InvalidOracle(format!("no lower bound found for {}", spec.name(p)))
        })?;
        let mut upper = None;
        for q in kernel.iter().rev() {
            if oracle(&UniserialModule::interval(&lower, q))? {
                upper = Some(q.clone());
                break;
            }
        }
        let upper = upper.ok_or_else(|| {
            Error::InvalidOracle(format!("no upper bound found for {}", spec.name(p)))
        })?;
        let chi =
            Interval::new(spec, lower, upper).map_err(|e| Error::InvalidOracle(e.to_string()))?;
        if !intervals.contains(&chi) {
            intervals.push(chi);
        }
    }
    let system = AdmissibleSystem::finite(spec, intervals)?;
    let violations = system.validate();
    if let Some(v) = violations.first() {
        return Err(Error::InvalidOracle(format!(
            "{:?}: {}",
            v.axiom, v.witness
        )));
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{cyclic_vocabulary, uniserial_vocabulary, IdealPos};

    fn chain3() -> Spectrum {
        Spectrum::finite_chain(vec![
            ("0".into(), true),
            ("q".into(), true),
            ("m".into(), true),
        ])
        .unwrap()
    }

    #[test]
    fn tor_clauses() {
        let s = chain3();
        let (zero, m) = (s.zero(), s.top());
        let principal = RIdeal::Proper(IdealPos::generic(&s, &m, &m, true).unwrap());
        assert!(tor1_vanishes(&s, &m, &zero, &principal).unwrap());
        assert!(!tor1_vanishes(&s, &m, &m, &principal).unwrap());
        let zero_ideal = RIdeal::Proper(IdealPos::prime(&s, &zero).unwrap());
        assert!(tor1_vanishes(&s, &m, &m, &zero_ideal).unwrap());
        let t = Spectrum::two_point(false);
        assert!(matches!(
            tor1_vanishes(&t, &t.top(), &t.top(), &zero_ideal),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn h0_examples() {
        let s = Spectrum::two_point(true);
        let (zero, m) = (s.zero(), s.top());
        let gap = KComplexRef {
            below: zero.clone().into(),
            above: m.clone().into(),
        };
        assert!(h0_vanishes(&gap, &UniserialModule::residue_field(&m)).unwrap());
        let stalk = KComplexRef {
            below: ExtPrime::NegInfinity,
            above: m.clone().into(),
        };
        assert!(h0_vanishes(&stalk, &UniserialModule::residue_field(&m)).unwrap());
        let principal = RIdeal::Proper(IdealPos::generic(&s, &m, &m, true).unwrap());
        assert!(!h0_vanishes(&gap, &UniserialModule::cyclic(&s, &principal)).unwrap());
    }

    #[test]
    fn h1_examples() {
        let s = chain3();
        let q = s.prime("q").unwrap();
        let at_q = KComplexRef {
            below: q.clone().into(),
            above: ExtPrime::RingTop,
        };
        assert!(h1_vanishes(&s, &at_q, &UniserialModule::interval(&q, &s.zero())).unwrap());
        let token = RIdeal::Proper(IdealPos::generic(&s, &q, &q, false).unwrap());
        assert!(!h1_vanishes(&s, &at_q, &UniserialModule::cyclic(&s, &token)).unwrap());
        let at_m = KComplexRef {
            below: s.top().into(),
            above: ExtPrime::RingTop,
        };
        assert!(h1_vanishes(&s, &at_m, &UniserialModule::cyclic(&s, &token)).unwrap());
    }

    #[test]
    fn membership_examples() {
        let s = chain3();
        let q = s.prime("q").unwrap();
        let x = AdmissibleSystem::named(&s, &[("0", "q")]).unwrap();
        assert!(uniserial_in_class(&x, &UniserialModule::interval(&s.zero(), &q)).unwrap());
        assert!(!uniserial_in_class(&x, &UniserialModule::residue_field(&s.top())).unwrap());
        let empty = AdmissibleSystem::empty(&s);
        for m in uniserial_vocabulary(&s) {
            assert_eq!(uniserial_in_class(&empty, &m).unwrap(), m.is_zero());
        }
    }

    #[test]
    fn two_point_tor_table() {
        let s = Spectrum::two_point(true);
        let x = AdmissibleSystem::named(&s, &[("0", "0"), ("m", "m")]).unwrap();
        let report = class_equals_tor_description(&x, &cyclic_vocabulary(&s)).unwrap();
        assert_eq!(report.rows.len(), 5);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }

    #[test]
    fn recovery_examples() {
        let s = chain3();
        let x = AdmissibleSystem::named(&s, &[("0", "q")]).unwrap();
        assert_eq!(
            recover_system(&s, |m| uniserial_in_class(&x, m)).unwrap(),
            x
        );
        assert_eq!(
            recover_system(&s, |_| Ok(true)).unwrap().literal(),
            "{[0,m]}"
        );
        assert!(recover_system(&s, |m| Ok(m.is_zero())).unwrap().is_empty());
    }
}
