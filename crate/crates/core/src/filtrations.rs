//! Integer-indexed filtrations of admissible systems: nestedness, degreewise
//! non-density (checked three independent ways), classification and
//! enumeration over finite spectra.

use serde::Serialize;

use crate::coaisle::{build_generators, filtration_to_chain, EpiChain, GeneratorDescriptor};
use crate::error::{Error, Result};
use crate::params::{Piece, Range};
use crate::spectrum::{Spectrum, SpectrumKind};
use crate::systems::{all_systems, AdmissibleSystem, Interval};

/// How the filtration continues below the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BelowRule {
    Empty,
    ConstantFirst,
}

/// How the filtration continues above the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AboveRule {
    ConstantLast,
    /// `{[0,q_n],[m,m]}` on the ω+1 chain.
    Ex1Tail,
    /// `{[0,q_n]}` on the ω+1 chain.
    Ex2Tail,
}

impl AboveRule {
    fn is_tail(self) -> bool {
        !matches!(self, AboveRule::ConstantLast)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFiltration {
    spectrum: Spectrum,
    start: i64,
    systems: Vec<AdmissibleSystem>,
    below: BelowRule,
    above: AboveRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationAxiom {
    System,
    Nestedness,
    NonDensity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationViolation {
    pub degree: i64,
    pub axiom: FiltrationAxiom,
    pub witness: String,
}

/// Verdicts of the three equivalent forms of degreewise non-density for one
/// pair of consecutive systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonDensityVerdicts {
    pub definition: bool,
    pub gap_form: bool,
    pub dense_subset_form: bool,
}

impl NonDensityVerdicts {
    pub fn agree(&self) -> bool {
        self.definition == self.gap_form && self.gap_form == self.dense_subset_form
    }
}

/// Segments `[a,b]` of full families in `upper`: its classes with more than
/// one element.
fn dense_segments(upper: &AdmissibleSystem) -> Vec<Range> {
    upper
        .dense_classes()
        .into_iter()
        .map(|c| Range::closed(c.from, c.to))
        .collect()
}

/// Direct reading: between any two members `u < v` of a class there is a
/// member `w` whose interval contains no interval of `lower`. The open range
/// `(a,b)` is cut at every landmark of `lower`; each nondegenerate cell is
/// probed at several interior points.
fn non_density_by_definition(lower: &AdmissibleSystem, upper: &AdmissibleSystem) -> bool {
    let spec = upper.spectrum();
    let mut cuts = Vec::new();
    for piece in lower.blocked_parameters() {
        cuts.push(piece.min());
        cuts.push(piece.max());
    }
    for class in dense_segments(upper) {
        let (Some(a), Some(b)) = (&class.lo, &class.hi) else {
            continue;
        };
        let mut local: Vec<_> = cuts
            .iter()
            .filter(|c| a.value < **c && **c < b.value)
            .cloned()
            .collect();
        local.push(a.value.clone());
        local.push(b.value.clone());
        for cell in crate::params::cells(&local) {
            let inside = cell.intersect(&Range::open(a.value.clone(), b.value.clone()));
            if inside.is_empty() || inside.is_degenerate() {
                continue;
            }
            let free = inside.interior_samples().into_iter().any(|w| {
                let p = spec.lex(w.clone(), false).expect("parameter in [0,1]");
                let q = spec.lex(w, true).expect("parameter in [0,1]");
                lower.interval_inside(&p, &q).is_none()
            });
            if !free {
                return false;
            }
        }
    }
    true
}

/// Gap reading: members strictly inside a gap of `lower` are dense in every
/// class. The parameters of such members form finitely many open ranges.
fn non_density_by_gaps(lower: &AdmissibleSystem, upper: &AdmissibleSystem) -> bool {
    let classes = dense_segments(upper);
    if classes.is_empty() {
        return true;
    }
    let free = lower.gaps().strict_parameter_ranges();
    classes.into_iter().all(|class| {
        let (Some(a), Some(b)) = (&class.lo, &class.hi) else {
            return true;
        };
        let mut rest = vec![Range::open(a.value.clone(), b.value.clone())];
        for r in &free {
            rest = rest.iter().flat_map(|part| part.subtract(r)).collect();
        }
        rest.iter().all(Range::is_degenerate)
    })
}

/// Dense-subset reading: the members containing no interval of `lower` have
/// closure equal to the whole class. Removing the blocked segments leaves
/// finitely many ranges whose closures must chain from `a` to `b`; blocked
/// points and sequences are nowhere dense and do not affect the closure.
fn non_density_by_dense_subset(lower: &AdmissibleSystem, upper: &AdmissibleSystem) -> bool {
    let blocked: Vec<Range> = lower
        .blocked_parameters()
        .into_iter()
        .filter(Piece::is_segment)
        .map(|p| p.hull())
        .collect();
    dense_segments(upper).into_iter().all(|class| {
        let (Some(a), Some(b)) = (class.lo.clone(), class.hi.clone()) else {
            return true;
        };
        let mut rest = vec![class];
        for r in &blocked {
            rest = rest.iter().flat_map(|part| part.subtract(r)).collect();
        }
        let mut closures: Vec<(_, _)> = rest
            .into_iter()
            .filter(|r| !r.is_degenerate())
            .map(|r| (r.lo.expect("bounded").value, r.hi.expect("bounded").value))
            .collect();
        closures.sort();
        let Some(first) = closures.first() else {
            return false;
        };
        if first.0 != a.value || closures.last().expect("non-empty").1 != b.value {
            return false;
        }
        closures.windows(2).all(|w| w[0].1 == w[1].0)
    })
}

/// All three forms of degreewise non-density for `lower ⊆ upper`.
pub fn non_density_forms(lower: &AdmissibleSystem, upper: &AdmissibleSystem) -> NonDensityVerdicts {
    NonDensityVerdicts {
        definition: non_density_by_definition(lower, upper),
        gap_form: non_density_by_gaps(lower, upper),
        dense_subset_form: non_density_by_dense_subset(lower, upper),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorptionWitness {
    pub degree: i64,
    pub class: String,
    pub absorbed_by: Option<String>,
}

/// A verdict echoed from an external source rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annotation {
    pub value: bool,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub nowhere_dense: bool,
    pub compactly_generated: bool,
    pub bounded: bool,
    pub right_nondegenerate: bool,
    pub co_intermediate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_nondegenerate: Option<Annotation>,
    pub epi_chain: Option<EpiChain>,
    pub generators: Option<Vec<GeneratorDescriptor>>,
    pub notes: Vec<String>,
}

impl AdmissibleFiltration {
    /// `systems[k]` sits in degree `start + k`.
    pub fn new(
        spec: &Spectrum,
        start: i64,
        systems: Vec<AdmissibleSystem>,
        below: BelowRule,
        above: AboveRule,
    ) -> Result<AdmissibleFiltration> {
        if systems.is_empty() {
            return Err(Error::Parse(
                "a filtration window needs at least one degree".into(),
            ));
        }
        if systems.iter().any(|x| x.spectrum() != spec) {
            return Err(Error::MixedSpectrum);
        }
        if above.is_tail() {
            if spec.kind() != SpectrumKind::OmegaPlusOne {
                return Err(Error::Unsupported(
                    "tail rules live on the ω+1 chain".into(),
                ));
            }
            if start + systems.len() as i64 - 1 < -1 {
                return Err(Error::Unsupported(
                    "tail rules need the window to end at degree −1 or later".into(),
                ));
            }
        }
        Ok(AdmissibleFiltration {
            spectrum: spec.clone(),
            start,
            systems,
            below,
            above,
        })
    }

    /// The same system in every degree.
    pub fn constant(system: AdmissibleSystem) -> AdmissibleFiltration {
        AdmissibleFiltration {
            spectrum: system.spectrum().clone(),
            start: 0,
            systems: vec![system],
            below: BelowRule::ConstantFirst,
            above: AboveRule::ConstantLast,
        }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn window(&self) -> (i64, i64) {
        (self.start, self.start + self.systems.len() as i64 - 1)
    }

    pub fn below(&self) -> BelowRule {
        self.below
    }

    pub fn above(&self) -> AboveRule {
        self.above
    }

    pub fn window_systems(&self) -> &[AdmissibleSystem] {
        &self.systems
    }

    pub fn system_at(&self, n: i64) -> AdmissibleSystem {
        let (a, b) = self.window();
        if n < a {
            return match self.below {
                BelowRule::Empty => AdmissibleSystem::empty(&self.spectrum),
                BelowRule::ConstantFirst => self.systems[0].clone(),
            };
        }
        if n <= b {
            return self.systems[(n - a) as usize].clone();
        }
        let spec = &self.spectrum;
        let step = || spec.step(n as u64).expect("tail degrees are non-negative");
        let base = || Interval {
            lower: spec.zero(),
            upper: step(),
        };
        let top = || Interval {
            lower: spec.top(),
            upper: spec.top(),
        };
        match self.above {
            AboveRule::ConstantLast => self.systems[self.systems.len() - 1].clone(),
            AboveRule::Ex1Tail => {
                AdmissibleSystem::finite(spec, vec![base(), top()]).expect("tail shape")
            }
            AboveRule::Ex2Tail => AdmissibleSystem::finite(spec, vec![base()]).expect("tail shape"),
        }
    }

    /// Degrees whose systems, together with the rules, determine every
    /// predicate: one below the window through one above it.
    pub fn probe_degrees(&self) -> std::ops::RangeInclusive<i64> {
        let (a, b) = self.window();
        (a - 1)..=(b + 1)
    }

    /// Checks every axiom; `Err` only when the three non-density forms disagree.
    pub fn validate(&self) -> Result<Vec<FiltrationViolation>> {
        let mut out = Vec::new();
        for n in self.probe_degrees() {
            for v in self.system_at(n).validate() {
                out.push(FiltrationViolation {
                    degree: n,
                    axiom: FiltrationAxiom::System,
                    witness: format!("{:?}: {}", v.axiom, v.witness),
                });
            }
        }
        if !out.is_empty() {
            return Ok(out);
        }
        // Past the window the tails are nested by shape (q_n ⊆ q_{n+1}) and
        // finite, so pairs beyond `b+1` add nothing.
        for n in self.probe_degrees() {
            let (lower, upper) = (self.system_at(n), self.system_at(n + 1));
            for miss in lower.nesting_failures(&upper) {
                out.push(FiltrationViolation {
                    degree: n,
                    axiom: FiltrationAxiom::Nestedness,
                    witness: format!(
                        "{miss} of degree {n} lies in no interval of degree {}",
                        n + 1
                    ),
                });
            }
            let verdicts = non_density_forms(&lower, &upper);
            if !verdicts.agree() {
                return Err(Error::FormulationMismatch(format!(
                    "degrees {n}/{}: {verdicts:?} on {} ⊆ {}",
                    n + 1,
                    lower.literal(),
                    upper.literal()
                )));
            }
            if !verdicts.definition {
                out.push(FiltrationViolation {
                    degree: n + 1,
                    axiom: FiltrationAxiom::NonDensity,
                    witness: format!(
                        "a dense class of {} is swamped by {}",
                        upper.literal(),
                        lower.literal()
                    ),
                });
            }
        }
        Ok(out)
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.validate()?.is_empty())
    }

    /// Every dense class of `X_n` lies inside one interval of `X_{n+1}`.
    pub fn dncons_check(&self) -> Vec<AbsorptionWitness> {
        let spec = &self.spectrum;
        let mut out = Vec::new();
        for n in self.probe_degrees() {
            let upper = self.system_at(n + 1);
            for class in self.system_at(n).dense_classes() {
                let tau = class.tau(spec);
                out.push(AbsorptionWitness {
                    degree: n,
                    class: class.literal(),
                    absorbed_by: upper
                        .interval_within(&tau.lower, &tau.upper)
                        .map(|i| i.literal(spec)),
                });
            }
        }
        out
    }

    pub fn is_nowhere_dense(&self) -> bool {
        self.probe_degrees()
            .all(|n| self.system_at(n).is_nowhere_dense())
    }

    pub fn classify(&self) -> Result<ClassificationReport> {
        let degrees: Vec<AdmissibleSystem> =
            self.probe_degrees().map(|n| self.system_at(n)).collect();
        let nowhere_dense = self.is_nowhere_dense();
        let compactly_generated = degrees.iter().all(|x| x.is_empty() || x.is_localisation())
            && !matches!(self.above, AboveRule::Ex1Tail);
        let has_empty = degrees.iter().any(AdmissibleSystem::is_empty);
        let bounded = has_empty && degrees.iter().any(AdmissibleSystem::is_full);
        let mut notes = Vec::new();
        if matches!(self.below, BelowRule::ConstantFirst) && !has_empty {
            notes.push("constant below the window: never empty".into());
        }
        let epi_chain = if nowhere_dense {
            Some(filtration_to_chain(self)?)
        } else {
            None
        };
        Ok(ClassificationReport {
            nowhere_dense,
            compactly_generated,
            bounded,
            right_nondegenerate: has_empty,
            co_intermediate: bounded,
            left_nondegenerate: None,
            epi_chain,
            generators: Some(build_generators(self)),
            notes,
        })
    }

    pub fn literal(&self) -> String {
        let (a, _) = self.window();
        let parts: Vec<String> = self
            .systems
            .iter()
            .enumerate()
            .map(|(k, x)| format!("{}: {}", a + k as i64, x.literal()))
            .collect();
        format!(
            "{:?} below; {}; {:?} above",
            self.below,
            parts.join("; "),
            self.above
        )
    }
}

/// Calls `visit` on every filtration over a finite spectrum with the given
/// window, empty below and constant above, in a fixed order. Stops with
/// [`Error::BudgetExceeded`] once more than `budget` filtrations are found.
pub fn for_each_filtration(
    spec: &Spectrum,
    window: (i64, i64),
    budget: u64,
    mut visit: impl FnMut(&AdmissibleFiltration),
) -> Result<u64> {
    if !spec.is_finite() {
        return Err(Error::Unsupported(
            "enumeration needs a finite spectrum".into(),
        ));
    }
    let (a, b) = window;
    if b < a {
        return Err(Error::Parse(format!("window {a}..{b} is empty")));
    }
    let length = (b - a + 1) as u64;
    if length > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let systems = all_systems(spec);
    // successors[i] lists the systems in which system i is nested.
    let successors: Vec<Vec<usize>> = systems
        .iter()
        .map(|x| {
            (0..systems.len())
                .filter(|&j| x.is_nested_in(&systems[j]))
                .collect()
        })
        .collect();
    let mut count = 0u64;
    let mut chosen: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn walk(
        spec: &Spectrum,
        start: i64,
        length: usize,
        systems: &[AdmissibleSystem],
        successors: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        count: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&AdmissibleFiltration),
    ) -> Result<()> {
        if chosen.len() == length {
            *count += 1;
            if *count > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            let f = AdmissibleFiltration {
                spectrum: spec.clone(),
                start,
                systems: chosen.iter().map(|&i| systems[i].clone()).collect(),
                below: BelowRule::Empty,
                above: AboveRule::ConstantLast,
            };
            visit(&f);
            return Ok(());
        }
        let options: Vec<usize> = match chosen.last() {
            None => (0..systems.len()).collect(),
            Some(&i) => successors[i].clone(),
        };
        for j in options {
            chosen.push(j);
            walk(
                spec, start, length, systems, successors, chosen, count, budget, visit,
            )?;
            chosen.pop();
        }
        Ok(())
    }
    walk(
        spec,
        a,
        length as usize,
        &systems,
        &successors,
        &mut chosen,
        &mut count,
        budget,
        &mut visit,
    )?;
    Ok(count)
}

pub fn enumerate(
    spec: &Spectrum,
    window: (i64, i64),
    budget: u64,
) -> Result<Vec<AdmissibleFiltration>> {
    let mut out = Vec::new();
    for_each_filtration(spec, window, budget, |f| out.push(f.clone()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{rat, Geometric, ParamSet};

    fn ex0_systems(full_points: bool) -> (Spectrum, Vec<AdmissibleSystem>) {
        let s = Spectrum::lex_double();
        let z = if full_points {
            ParamSet::segment(rat(0, 1), rat(1, 1)).unwrap()
        } else {
            ParamSet::new(vec![Piece::Geo(
                Geometric::new(rat(0, 1), rat(1, 1), rat(1, 2)).unwrap(),
            )])
            .unwrap()
        };
        let x0 = AdmissibleSystem::point_pairs(&s, &z).unwrap();
        let x1 = AdmissibleSystem::full_lex(&s, &ParamSet::segment(rat(0, 1), rat(1, 1)).unwrap())
            .unwrap();
        let x2 = AdmissibleSystem::named(&s, &[("0", "m")]).unwrap();
        (s, vec![x0, x1, x2])
    }

    #[test]
    fn sequence_filtration_passes_all_forms() {
        let (s, xs) = ex0_systems(false);
        let v = non_density_forms(&xs[0], &xs[1]);
        assert!(v.definition && v.gap_form && v.dense_subset_form);
        let f = AdmissibleFiltration::new(&s, 0, xs, BelowRule::Empty, AboveRule::ConstantLast)
            .unwrap();
        assert_eq!(f.validate().unwrap(), []);
        assert!(f.dncons_check().iter().all(|w| w.absorbed_by.is_some()));
    }

    #[test]
    fn full_point_pairs_fail_all_forms() {
        let (s, xs) = ex0_systems(true);
        let v = non_density_forms(&xs[0], &xs[1]);
        assert!(!v.definition && !v.gap_form && !v.dense_subset_form);
        let f = AdmissibleFiltration::new(&s, 0, xs, BelowRule::Empty, AboveRule::ConstantLast)
            .unwrap();
        let violations = f.validate().unwrap();
        assert!(violations
            .iter()
            .all(|v| v.axiom == FiltrationAxiom::NonDensity));
        assert_eq!(violations.len(), 1);
    }

    #[test]
    fn constant_dense_filtration_is_invalid() {
        let (_, xs) = ex0_systems(false);
        let f = AdmissibleFiltration::constant(xs[1].clone());
        assert!(!f.is_valid().unwrap());
    }

    #[test]
    fn counts_on_two_point() {
        let s = Spectrum::two_point(true);
        assert_eq!(enumerate(&s, (0, 0), 1000).unwrap().len(), 5);
        assert_eq!(enumerate(&s, (0, 1), 1000).unwrap().len(), 14);
        assert_eq!(
            enumerate(&s, (0, 1), 10),
            Err(Error::BudgetExceeded { budget: 10 })
        );
    }
}
