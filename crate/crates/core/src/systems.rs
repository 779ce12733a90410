//! Admissible systems of prime intervals.
//!
//! A system is stored as a sorted list of [`Run`]s. On finite chains and on
//! the ω+1 chain every run is a single interval. On the lexicographic double
//! a run may also be a parametric family `{[p_x,q_x] : x ∈ P}` or
//! `{[p_x,p_x],[q_x,q_x] : x ∈ P}` over one piece `P` of a describable
//! parameter set. Runs occupy pairwise disjoint stretches of the spectrum, so
//! the order `(X,<)` is the concatenation of the runs and every order
//! question reduces to a question about one piece.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::IdealPos;
use crate::params::{fmt_rational, Endpoint, Extreme, Geometric, ParamSet, Piece, Range, Rational};
use crate::spectrum::{ExtPrime, Prime, Spectrum};

/// A formal interval `[lower, upper]` of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lower: Prime,
    pub upper: Prime,
}

impl Interval {
    pub fn new(spec: &Spectrum, lower: Prime, upper: Prime) -> Result<Interval> {
        spec.check(&lower)?;
        spec.check(&upper)?;
        if lower > upper {
            return Err(Error::InvalidInterval(format!(
                "[{},{}] has its lower bound above its upper bound",
                spec.name(&lower),
                spec.name(&upper)
            )));
        }
        Ok(Interval { lower, upper })
    }

    pub fn named(spec: &Spectrum, lower: &str, upper: &str) -> Result<Interval> {
        Interval::new(spec, spec.prime(lower)?, spec.prime(upper)?)
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    /// `self < other` in the interval order: `q_self ⊊ p_other`.
    pub fn precedes(&self, other: &Interval) -> bool {
        self.upper < other.lower
    }

    pub fn literal(&self, spec: &Spectrum) -> String {
        format!("[{},{}]", spec.name(&self.lower), spec.name(&self.upper))
    }
}

/// Shape of the elements of a parametric run: the sides (`false` for `p_x`,
/// `true` for `q_x`) of the lower and upper bound.
type Shape = (bool, bool);
const FULL: [Shape; 1] = [(false, true)];
const POINTS: [Shape; 2] = [(false, false), (true, true)];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Run {
    Single(Interval),
    /// `{[p_x,q_x] : x ∈ piece}`.
    Full(Piece),
    /// `{[p_x,p_x],[q_x,q_x] : x ∈ piece}`.
    Points(Piece),
}

impl Run {
    fn shapes(&self) -> &'static [Shape] {
        match self {
            Run::Single(_) => &[],
            Run::Full(_) => &FULL,
            Run::Points(_) => &POINTS,
        }
    }

    fn piece(&self) -> Option<&Piece> {
        match self {
            Run::Single(_) => None,
            Run::Full(p) | Run::Points(p) => Some(p),
        }
    }

    pub fn first(&self, spec: &Spectrum) -> Interval {
        match self {
            Run::Single(i) => i.clone(),
            Run::Full(p) => lex_interval(spec, &p.min(), (false, true)),
            Run::Points(p) => lex_interval(spec, &p.min(), (false, false)),
        }
    }

    pub fn last(&self, spec: &Spectrum) -> Interval {
        match self {
            Run::Single(i) => i.clone(),
            Run::Full(p) => lex_interval(spec, &p.max(), (false, true)),
            Run::Points(p) => lex_interval(spec, &p.max(), (true, true)),
        }
    }

    pub fn literal(&self, spec: &Spectrum) -> String {
        match self {
            Run::Single(i) => i.literal(spec),
            Run::Full(p) => format!("[p_x,q_x] : x ∈ {p}"),
            Run::Points(p) => format!("[p_x,p_x],[q_x,q_x] : x ∈ {p}"),
        }
    }
}

fn lex_prime(spec: &Spectrum, x: &Rational, upper: bool) -> Prime {
    spec.lex(x.clone(), upper)
        .expect("parameters of a validated run lie in [0,1]")
}

fn lex_interval(spec: &Spectrum, x: &Rational, shape: Shape) -> Interval {
    Interval {
        lower: lex_prime(spec, x, shape.0),
        upper: lex_prime(spec, x, shape.1),
    }
}

fn coordinate(p: &Prime) -> (Rational, bool) {
    let (x, side) = p
        .lex_coordinate()
        .expect("parametric runs live on the lexicographic double");
    (x.clone(), side)
}

/// Parameters `u` with `(u, side) ≥ bound`.
fn at_least(bound: &Prime, side: bool) -> Range {
    let (x, s) = coordinate(bound);
    Range {
        lo: Some(Endpoint {
            value: x,
            closed: side >= s,
        }),
        hi: None,
    }
}

/// Parameters `u` with `(u, side) ≤ bound`.
fn at_most(bound: &Prime, side: bool) -> Range {
    let (x, s) = coordinate(bound);
    Range {
        lo: None,
        hi: Some(Endpoint {
            value: x,
            closed: side <= s,
        }),
    }
}

/// Parameters `u` with `(u, side) < bound`.
fn below(bound: &Prime, side: bool) -> Range {
    let (x, s) = coordinate(bound);
    Range {
        lo: None,
        hi: Some(Endpoint {
            value: x,
            closed: !side & s,
        }),
    }
}

/// Parameters `u` with `(u, side) > bound`.
fn above(bound: &Prime, side: bool) -> Range {
    let (x, s) = coordinate(bound);
    Range {
        lo: Some(Endpoint {
            value: x,
            closed: side & !s,
        }),
        hi: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Disjointness,
    Idempotency,
    Completeness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapCase {
    Cover,
    BelowMin,
    AboveMax,
    EmptySystem,
}

/// A gap `(below, above)` of a system: `below ⊊ above` in the extended spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gap {
    pub below: ExtPrime,
    pub above: ExtPrime,
    pub case: GapCase,
}

impl Gap {
    pub fn literal(&self, spec: &Spectrum) -> String {
        format!(
            "({},{})",
            spec.ext_name(&self.below),
            spec.ext_name(&self.above)
        )
    }

    /// `below ⊊ p ⊆ q ⊊ above`.
    pub fn strictly_contains(&self, chi: &Interval) -> bool {
        let lower_ok = match &self.below {
            ExtPrime::NegInfinity => true,
            ExtPrime::Prime(b) => *b < chi.lower,
            ExtPrime::RingTop => false,
        };
        let upper_ok = match &self.above {
            ExtPrime::NegInfinity => false,
            ExtPrime::Prime(a) => chi.upper < *a,
            ExtPrime::RingTop => true,
        };
        lower_ok && upper_ok
    }
}

/// All gaps of a system: finitely many explicit gaps plus the parametric
/// families produced by point-pair runs and geometric runs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GapSet {
    pub explicit: Vec<Gap>,
    /// `{(p_x, q_x) : x ∈ piece}` from point-pair runs.
    pub inside_points: Vec<Piece>,
    /// `(q_s, p_t)` for consecutive terms `s < t` of each sequence.
    pub between_terms: Vec<Geometric>,
}

impl GapSet {
    pub fn is_empty(&self) -> bool {
        self.explicit.is_empty() && self.inside_points.is_empty() && self.between_terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.inside_points.is_empty() && self.between_terms.is_empty()
    }

    pub fn literals(&self, spec: &Spectrum) -> Vec<String> {
        let mut out: Vec<String> = self.explicit.iter().map(|g| g.literal(spec)).collect();
        out.extend(
            self.inside_points
                .iter()
                .map(|p| format!("(p_x,q_x) : x ∈ {p}")),
        );
        out.extend(
            self.between_terms
                .iter()
                .map(|g| format!("(q_s,p_t) : s<t consecutive in {}", Piece::Geo(g.clone()))),
        );
        out
    }

    /// Open parameter ranges whose full intervals `[p_u,q_u]` lie strictly
    /// inside some gap. Between the terms of a geometric sequence the open
    /// hull is used: it differs from the exact set by countably many terms,
    /// which does not affect density questions.
    pub fn strict_parameter_ranges(&self) -> Vec<Range> {
        let mut out = Vec::new();
        for g in &self.explicit {
            let lo = g.below.as_prime().map(|p| Endpoint {
                value: coordinate(p).0,
                closed: false,
            });
            let hi = g.above.as_prime().map(|p| Endpoint {
                value: coordinate(p).0,
                closed: false,
            });
            let r = Range { lo, hi };
            if !r.is_empty() {
                out.push(r);
            }
        }
        for g in &self.between_terms {
            out.push(Range::open(g.min(), g.max()));
        }
        out
    }
}

/// An equivalence class with more than one element: the full family over a
/// nondegenerate segment `[from, to]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseClass {
    pub from: Rational,
    pub to: Rational,
}

impl DenseClass {
    pub fn tau(&self, spec: &Spectrum) -> Interval {
        Interval {
            lower: lex_prime(spec, &self.from, false),
            upper: lex_prime(spec, &self.to, true),
        }
    }

    pub fn member(&self, spec: &Spectrum, x: &Rational) -> Interval {
        lex_interval(spec, x, (false, true))
    }

    pub fn literal(&self) -> String {
        format!(
            "[p_x,q_x] : x ∈ [{},{}]",
            fmt_rational(&self.from),
            fmt_rational(&self.to)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    InInterval(Interval),
    InGap(Gap),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSystem {
    spectrum: Spectrum,
    runs: Vec<Run>,
}

impl AdmissibleSystem {
    pub fn empty(spec: &Spectrum) -> AdmissibleSystem {
        AdmissibleSystem {
            spectrum: spec.clone(),
            runs: Vec::new(),
        }
    }

    pub fn finite(spec: &Spectrum, intervals: Vec<Interval>) -> Result<AdmissibleSystem> {
        AdmissibleSystem::new(spec, intervals.into_iter().map(Run::Single).collect())
    }

    pub fn named(spec: &Spectrum, pairs: &[(&str, &str)]) -> Result<AdmissibleSystem> {
        let intervals = pairs
            .iter()
            .map(|(a, b)| Interval::named(spec, a, b))
            .collect::<Result<Vec<_>>>()?;
        AdmissibleSystem::finite(spec, intervals)
    }

    /// `{[p_x,q_x] : x ∈ params}` on the lexicographic double.
    pub fn full_lex(spec: &Spectrum, params: &ParamSet) -> Result<AdmissibleSystem> {
        AdmissibleSystem::new(
            spec,
            params.pieces().iter().cloned().map(Run::Full).collect(),
        )
    }

    /// `{[p_x,p_x],[q_x,q_x] : x ∈ params}` on the lexicographic double.
    pub fn point_pairs(spec: &Spectrum, params: &ParamSet) -> Result<AdmissibleSystem> {
        AdmissibleSystem::new(
            spec,
            params.pieces().iter().cloned().map(Run::Points).collect(),
        )
    }

    pub fn new(spec: &Spectrum, raw: Vec<Run>) -> Result<AdmissibleSystem> {
        let mut runs = Vec::new();
        for run in raw {
            match run {
                Run::Single(i) => runs.push(Run::Single(Interval::new(spec, i.lower, i.upper)?)),
                Run::Full(piece) | Run::Points(piece)
                    if spec.kind() != crate::spectrum::SpectrumKind::LexDouble =>
                {
                    return Err(Error::Unsupported(format!(
                        "parametric family over {piece} needs the lexicographic double"
                    )))
                }
                Run::Full(piece) => {
                    check_unit(&piece)?;
                    match piece {
                        Piece::Point(x) => {
                            runs.push(Run::Single(lex_interval(spec, &x, (false, true))))
                        }
                        other => runs.push(Run::Full(other)),
                    }
                }
                Run::Points(piece) => {
                    check_unit(&piece)?;
                    match piece {
                        Piece::Point(x) => {
                            runs.push(Run::Single(lex_interval(spec, &x, (false, false))));
                            runs.push(Run::Single(lex_interval(spec, &x, (true, true))));
                        }
                        other => runs.push(Run::Points(other)),
                    }
                }
            }
        }
        runs.sort_by(|a, b| {
            (a.first(spec).lower, a.last(spec).upper)
                .cmp(&(b.first(spec).lower, b.last(spec).upper))
        });
        runs.dedup();
        Ok(AdmissibleSystem {
            spectrum: spec.clone(),
            runs,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// The intervals of a system without parametric runs.
    pub fn intervals(&self) -> Option<Vec<Interval>> {
        self.runs
            .iter()
            .map(|r| match r {
                Run::Single(i) => Some(i.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn is_finite_list(&self) -> bool {
        self.runs.iter().all(|r| matches!(r, Run::Single(_)))
    }

    /// Whether the system is `{[0,q]}` for some prime `q`.
    pub fn is_localisation(&self) -> bool {
        matches!(self.runs.as_slice(), [Run::Single(i)] if i.lower.is_zero())
    }

    /// Whether the system is `{[0,m]}`.
    pub fn is_full(&self) -> bool {
        matches!(self.runs.as_slice(), [Run::Single(i)] if i.lower.is_zero() && self.spectrum.is_top(&i.upper))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let spec = &self.spectrum;
        let mut out = Vec::new();
        for run in &self.runs {
            if let Run::Single(i) = run {
                if !i.lower.is_idempotent() {
                    out.push(Violation {
                        axiom: Axiom::Idempotency,
                        witness: format!("{} has a non-idempotent lower bound", i.literal(spec)),
                    });
                }
            }
        }
        for (k, a) in self.runs.iter().enumerate() {
            for b in &self.runs[k + 1..] {
                // Sorted by first lower bound: `a` must end before `b` starts.
                if !a.last(spec).precedes(&b.first(spec)) {
                    out.push(Violation {
                        axiom: Axiom::Disjointness,
                        witness: format!("{} and {} overlap", a.literal(spec), b.literal(spec)),
                    });
                }
            }
        }
        // Runs are closed (finite lists, closed segments, sequences with their
        // limit), so every subfamily has its union of lower bounds and
        // intersection of upper bounds realised; a finite concatenation of
        // complete chains with endpoints is complete.
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn contains_interval(&self, chi: &Interval) -> bool {
        self.runs.iter().any(|run| match run {
            Run::Single(i) => i == chi,
            _ => {
                let (Some((x, sl)), Some((y, su))) =
                    (chi.lower.lex_coordinate(), chi.upper.lex_coordinate())
                else {
                    return false;
                };
                x == y
                    && run.shapes().contains(&(sl, su))
                    && run.piece().is_some_and(|p| p.contains(x))
            }
        })
    }

    fn search(
        &self,
        single: impl Fn(&Interval) -> bool,
        range: impl Fn(Shape) -> Range,
    ) -> Option<Interval> {
        for run in &self.runs {
            match run {
                Run::Single(i) => {
                    if single(i) {
                        return Some(i.clone());
                    }
                }
                _ => {
                    let piece = run.piece().expect("family run");
                    for &shape in run.shapes() {
                        if let Some(u) = piece.representative_in(&range(shape)) {
                            return Some(lex_interval(&self.spectrum, &u, shape));
                        }
                    }
                }
            }
        }
        None
    }

    /// Some `χ` with `p_χ ⊆ a` and `b ⊆ q_χ`.
    pub fn interval_within(&self, a: &Prime, b: &Prime) -> Option<Interval> {
        self.search(
            |i| i.lower <= *a && *b <= i.upper,
            |(sl, su)| at_most(a, sl).intersect(&at_least(b, su)),
        )
    }

    /// Some `χ` with `a ⊆ p_χ` and `q_χ ⊆ b`.
    pub fn interval_inside(&self, a: &Prime, b: &Prime) -> Option<Interval> {
        self.search(
            |i| *a <= i.lower && i.upper <= *b,
            |(sl, su)| at_least(a, sl).intersect(&at_most(b, su)),
        )
    }

    /// Extreme element among those selected per run; `largest` picks the
    /// maximum. `Err` when the extreme is not attained.
    fn extreme(
        &self,
        largest: bool,
        single: impl Fn(&Interval) -> bool,
        range: impl Fn(Shape) -> Range,
    ) -> Result<Option<Interval>> {
        let mut best: Option<Interval> = None;
        for run in &self.runs {
            let mut candidates = Vec::new();
            match run {
                Run::Single(i) => {
                    if single(i) {
                        candidates.push(i.clone());
                    }
                }
                _ => {
                    let piece = run.piece().expect("family run");
                    for &shape in run.shapes() {
                        let r = range(shape);
                        let found = if largest {
                            piece.max_in(&r)
                        } else {
                            piece.min_in(&r)
                        };
                        match found {
                            Extreme::Empty => {}
                            Extreme::At(u) => {
                                candidates.push(lex_interval(&self.spectrum, &u, shape))
                            }
                            Extreme::Unattained => {
                                return Err(Error::NotDescribable(format!(
                                    "no extreme element inside {}",
                                    run.literal(&self.spectrum)
                                )))
                            }
                        }
                    }
                }
            }
            for c in candidates {
                let better = match &best {
                    None => true,
                    Some(b) => (largest && b.precedes(&c)) || (!largest && c.precedes(b)),
                };
                if better {
                    best = Some(c);
                }
            }
        }
        Ok(best)
    }

    /// Largest `χ` with `q_χ ⊊ bound`.
    pub fn last_below(&self, bound: &Prime) -> Result<Option<Interval>> {
        self.extreme(true, |i| i.upper < *bound, |(_, su)| below(bound, su))
    }

    /// Smallest `χ` with `bound ⊊ p_χ`.
    pub fn first_above(&self, bound: &Prime) -> Result<Option<Interval>> {
        self.extreme(false, |i| *bound < i.lower, |(sl, _)| above(bound, sl))
    }

    pub fn first(&self) -> Option<Interval> {
        self.runs.first().map(|r| r.first(&self.spectrum))
    }

    pub fn last(&self) -> Option<Interval> {
        self.runs.last().map(|r| r.last(&self.spectrum))
    }

    pub fn gaps(&self) -> GapSet {
        let spec = &self.spectrum;
        let mut set = GapSet::default();
        let (Some(first), Some(last)) = (self.first(), self.last()) else {
            set.explicit.push(Gap {
                below: ExtPrime::NegInfinity,
                above: ExtPrime::RingTop,
                case: GapCase::EmptySystem,
            });
            return set;
        };
        if !first.lower.is_zero() {
            set.explicit.push(Gap {
                below: ExtPrime::NegInfinity,
                above: first.lower.into(),
                case: GapCase::BelowMin,
            });
        }
        for (k, run) in self.runs.iter().enumerate() {
            match run {
                Run::Single(_) | Run::Full(Piece::Segment(..)) => {}
                Run::Full(Piece::Geo(g)) => set.between_terms.push(g.clone()),
                Run::Points(piece) => {
                    set.inside_points.push(piece.clone());
                    if let Piece::Geo(g) = piece {
                        set.between_terms.push(g.clone());
                    }
                }
                Run::Full(Piece::Point(_)) => unreachable!("normalised to a single interval"),
            }
            if let Some(next) = self.runs.get(k + 1) {
                set.explicit.push(Gap {
                    below: run.last(spec).upper.into(),
                    above: next.first(spec).lower.into(),
                    case: GapCase::Cover,
                });
            }
        }
        if !spec.is_top(&last.upper) {
            set.explicit.push(Gap {
                below: last.upper.into(),
                above: ExtPrime::RingTop,
                case: GapCase::AboveMax,
            });
        }
        set.explicit.sort();
        set
    }

    /// The classes of `~` with more than one element.
    pub fn dense_classes(&self) -> Vec<DenseClass> {
        self.runs
            .iter()
            .filter_map(|r| match r {
                Run::Full(Piece::Segment(a, b)) => Some(DenseClass {
                    from: a.clone(),
                    to: b.clone(),
                }),
                _ => None,
            })
            .collect()
    }

    /// The class of `χ` under `~`, as its extreme members.
    pub fn class_of(&self, chi: &Interval) -> Option<(Interval, Interval)> {
        if !self.contains_interval(chi) {
            return None;
        }
        for c in self.dense_classes() {
            if let Some((x, _)) = chi.lower.lex_coordinate() {
                if &c.from <= x
                    && x <= &c.to
                    && chi.upper.lex_coordinate().is_some_and(|(_, s)| s)
                    && !chi.lower.lex_coordinate().unwrap().1
                {
                    return Some((
                        c.member(&self.spectrum, &c.from),
                        c.member(&self.spectrum, &c.to),
                    ));
                }
            }
        }
        Some((chi.clone(), chi.clone()))
    }

    /// The nowhere dense system `{τ_C}` of class hulls.
    pub fn hull(&self) -> AdmissibleSystem {
        let runs = self
            .runs
            .iter()
            .map(|r| match r {
                Run::Full(Piece::Segment(a, b)) => Run::Single(Interval {
                    lower: lex_prime(&self.spectrum, a, false),
                    upper: lex_prime(&self.spectrum, b, true),
                }),
                other => other.clone(),
            })
            .collect();
        AdmissibleSystem {
            spectrum: self.spectrum.clone(),
            runs,
        }
    }

    pub fn is_nowhere_dense(&self) -> bool {
        self.dense_classes().is_empty()
    }

    /// `(X,<)` is dense and `X` has intervals `[0,·]` and `[·,m]`. A single
    /// interval `[0,m]` counts as (vacuously) dense.
    pub fn is_dense_everywhere(&self) -> bool {
        let spans = |first: Interval, last: Interval| {
            first.lower.is_zero() && self.spectrum.is_top(&last.upper)
        };
        match self.runs.as_slice() {
            [Run::Full(Piece::Segment(..))] | [Run::Single(_)] => {
                spans(self.first().unwrap(), self.last().unwrap())
            }
            _ => false,
        }
    }

    /// Where a proper ideal sits: inside an interval or strictly inside a gap.
    pub fn locate(&self, ideal: &IdealPos) -> Result<Location> {
        self.spectrum.check(&ideal.lo)?;
        if let Some(chi) = self.interval_within(&ideal.lo, &ideal.hi) {
            return Ok(Location::InInterval(chi));
        }
        let before = self.last_below(&ideal.hi)?;
        let after = self.first_above(&ideal.lo)?;
        let case = match (&before, &after) {
            (None, None) => GapCase::EmptySystem,
            (None, Some(_)) => GapCase::BelowMin,
            (Some(_), None) => GapCase::AboveMax,
            (Some(_), Some(_)) => GapCase::Cover,
        };
        Ok(Location::InGap(Gap {
            below: before.map_or(ExtPrime::NegInfinity, |c| c.upper.into()),
            above: after.map_or(ExtPrime::RingTop, |c| c.lower.into()),
            case,
        }))
    }

    /// Intervals of `self` not contained in any interval of `bigger`,
    /// described per run; empty when `self` is a nested subsystem.
    pub fn nesting_failures(&self, bigger: &AdmissibleSystem) -> Vec<String> {
        let spec = &self.spectrum;
        let mut out = Vec::new();
        for run in &self.runs {
            match run {
                Run::Single(i) => {
                    if bigger.interval_within(&i.lower, &i.upper).is_none() {
                        out.push(i.literal(spec));
                    }
                }
                _ => {
                    let piece = run.piece().expect("family run");
                    for &shape in run.shapes() {
                        let mut ranges = Vec::new();
                        let mut pieces = Vec::new();
                        for container in &bigger.runs {
                            match container {
                                Run::Single(c) => {
                                    if c.lower.lex_coordinate().is_some() {
                                        ranges.push(
                                            at_least(&c.lower, shape.0)
                                                .intersect(&at_most(&c.upper, shape.1)),
                                        );
                                    }
                                }
                                Run::Full(p) => pieces.push(p.clone()),
                                Run::Points(p) if shape.0 == shape.1 => pieces.push(p.clone()),
                                Run::Points(_) => {}
                            }
                        }
                        if !piece.covered_by(&ranges, &pieces) {
                            out.push(format!("{} (side {:?})", run.literal(spec), shape));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_nested_in(&self, bigger: &AdmissibleSystem) -> bool {
        self.nesting_failures(bigger).is_empty()
    }

    /// Parameters `u` for which `[p_u,q_u]` contains an interval of `self`.
    pub fn blocked_parameters(&self) -> Vec<Piece> {
        self.runs
            .iter()
            .filter_map(|r| match r {
                Run::Single(i) => match (i.lower.lex_coordinate(), i.upper.lex_coordinate()) {
                    (Some((x, _)), Some((y, _))) if x == y => Some(Piece::Point(x.clone())),
                    _ => None,
                },
                Run::Full(p) | Run::Points(p) => Some(p.clone()),
            })
            .collect()
    }

    pub fn literal(&self) -> String {
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|r| r.literal(&self.spectrum))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn check_unit(piece: &Piece) -> Result<()> {
    let unit = Range::closed(
        Rational::from_integer(0.into()),
        Rational::from_integer(1.into()),
    );
    if unit.contains(&piece.min()) && unit.contains(&piece.max()) {
        Ok(())
    } else {
        Err(Error::NotDescribable(format!(
            "parameters {piece} leave [0,1]"
        )))
    }
}

impl fmt::Display for AdmissibleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

/// Every admissible system of a finite spectrum, in a fixed order: by number
/// of intervals, then lexicographically by interval.
pub fn all_systems(spec: &Spectrum) -> Vec<AdmissibleSystem> {
    let Some(primes) = spec.primes() else {
        return Vec::new();
    };
    let mut candidates = Vec::new();
    for p in primes.iter().filter(|p| p.is_idempotent()) {
        for q in primes.iter().filter(|q| *q >= p) {
            candidates.push(Interval {
                lower: p.clone(),
                upper: q.clone(),
            });
        }
    }
    candidates.sort();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_disjoint(&candidates, 0, &mut chosen, &mut out);
    let mut systems: Vec<AdmissibleSystem> = out
        .into_iter()
        .map(|v| AdmissibleSystem {
            spectrum: spec.clone(),
            runs: v.into_iter().map(Run::Single).collect(),
        })
        .collect();
    systems.sort_by(|a, b| {
        a.runs
            .len()
            .cmp(&b.runs.len())
            .then_with(|| a.intervals().cmp(&b.intervals()))
    });
    systems
}

fn extend_disjoint(
    cands: &[Interval],
    from: usize,
    chosen: &mut Vec<Interval>,
    out: &mut Vec<Vec<Interval>>,
) {
    out.push(chosen.clone());
    for k in from..cands.len() {
        if chosen.last().is_none_or(|last| last.precedes(&cands[k])) {
            chosen.push(cands[k].clone());
            extend_disjoint(cands, k + 1, chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::rat;

    fn chain3() -> Spectrum {
        Spectrum::finite_chain(vec![
            ("0".into(), true),
            ("q".into(), true),
            ("m".into(), true),
        ])
        .unwrap()
    }

    #[test]
    fn two_point_system_counts() {
        assert_eq!(all_systems(&Spectrum::two_point(true)).len(), 5);
        assert_eq!(all_systems(&chain3()).len(), 13);
        assert_eq!(all_systems(&Spectrum::two_point(false)).len(), 3);
    }

    #[test]
    fn gap_cases() {
        let s = chain3();
        assert_eq!(
            AdmissibleSystem::empty(&s).gaps().literals(&s),
            ["(-inf,R)"]
        );
        let x = AdmissibleSystem::named(&s, &[("0", "0"), ("m", "m")]).unwrap();
        assert_eq!(x.gaps().literals(&s), ["(0,m)"]);
        let y = AdmissibleSystem::named(&s, &[("q", "q")]).unwrap();
        assert_eq!(y.gaps().literals(&s), ["(-inf,q)", "(q,R)"]);
    }

    #[test]
    fn non_idempotent_lower_bound() {
        let s = Spectrum::finite_chain(vec![
            ("0".into(), true),
            ("q".into(), false),
            ("m".into(), true),
        ])
        .unwrap();
        let x = AdmissibleSystem::named(&s, &[("q", "m")]).unwrap();
        assert_eq!(x.validate()[0].axiom, Axiom::Idempotency);
    }

    #[test]
    fn full_family_is_one_dense_class() {
        let s = Spectrum::lex_double();
        let x = AdmissibleSystem::full_lex(&s, &ParamSet::segment(rat(0, 1), rat(1, 1)).unwrap())
            .unwrap();
        assert!(x.is_valid());
        assert!(x.is_dense_everywhere());
        assert!(!x.is_nowhere_dense());
        assert_eq!(x.hull().literal(), "{[0,m]}");
        assert!(x.gaps().is_empty());
    }

    #[test]
    fn split_family_hull() {
        let s = Spectrum::lex_double();
        let params = ParamSet::new(vec![
            Piece::Segment(rat(0, 1), rat(1, 2)),
            Piece::Point(rat(1, 1)),
        ])
        .unwrap();
        let x = AdmissibleSystem::full_lex(&s, &params).unwrap();
        assert_eq!(x.dense_classes().len(), 1);
        assert_eq!(x.hull().literal(), "{[0,q(1/2)], [p(1),m]}");
        assert_eq!(x.gaps(), x.hull().gaps());
    }

    #[test]
    fn points_over_sequence_nest_in_full_family() {
        let s = Spectrum::lex_double();
        let z = ParamSet::new(vec![Piece::Geo(
            Geometric::new(rat(0, 1), rat(1, 1), rat(1, 2)).unwrap(),
        )])
        .unwrap();
        let x0 = AdmissibleSystem::point_pairs(&s, &z).unwrap();
        let x1 = AdmissibleSystem::full_lex(&s, &ParamSet::segment(rat(0, 1), rat(1, 1)).unwrap())
            .unwrap();
        assert!(x0.is_valid());
        assert!(x0.is_nested_in(&x1));
        assert!(!x1.is_nested_in(&x0));
        let gaps = x0.gaps();
        assert_eq!(gaps.inside_points.len(), 1);
        assert_eq!(gaps.between_terms.len(), 1);
    }

    #[test]
    fn locate_in_gap_and_interval() {
        let s = chain3();
        let x = AdmissibleSystem::named(&s, &[("0", "0"), ("m", "m")]).unwrap();
        let q = IdealPos::prime(&s, &s.prime("q").unwrap()).unwrap();
        match x.locate(&q).unwrap() {
            Location::InGap(g) => assert_eq!(g.literal(&s), "(0,m)"),
            other => panic!("unexpected {other:?}"),
        }
        let full = AdmissibleSystem::named(&s, &[("0", "m")]).unwrap();
        assert!(matches!(full.locate(&q).unwrap(), Location::InInterval(_)));
    }
}
