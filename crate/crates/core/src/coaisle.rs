//! Coaisles described degreewise by uniserial membership, their tensor
//! generators, and chains of ring epimorphisms for nowhere dense filtrations.

use std::fmt;

use serde::Serialize;

use crate::cosilting::{
    h0_vanishes, h1_vanishes, recover_system_on, tensor_vanishes, uniserial_in_class, KComplexRef,
    UniserialModule,
};
use crate::error::{Error, Result};
use crate::filtrations::{AboveRule, AdmissibleFiltration, BelowRule};
use crate::ideals::{f_part, is_q_divisible};
use crate::params::fmt_rational;
use crate::spectrum::{Prime, Spectrum, SpectrumKind};
use crate::systems::{AdmissibleSystem, Interval, Run};

fn finite_intervals(x: &AdmissibleSystem, what: &str) -> Result<Vec<Interval>> {
    x.intervals().ok_or_else(|| {
        Error::Unsupported(format!(
            "{what} needs a finite list of intervals, got {}",
            x.literal()
        ))
    })
}

/// Membership of `M` in `V_n`, read off the intervals: `M` lies in the class
/// of `X_n` and `F_q(M)` is an `R_q`-module for every interval `[p,q]` of
/// `X_{n+1}`.
pub fn xi_membership(f: &AdmissibleFiltration, n: i64, m: &UniserialModule) -> Result<bool> {
    let spec = f.spectrum();
    if !uniserial_in_class(&f.system_at(n), m)? {
        return Ok(false);
    }
    for chi in finite_intervals(&f.system_at(n + 1), "degreewise membership")? {
        if !is_q_divisible(spec, &f_part(m, &chi.upper)?, &chi.upper) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same membership through the test complexes: class membership in
/// degree `n`, `H¹` vanishing against the gaps of `X_{n+1}` and tensor
/// vanishing against its dense subsets.
pub fn xi_membership_homological(
    f: &AdmissibleFiltration,
    n: i64,
    m: &UniserialModule,
) -> Result<bool> {
    let spec = f.spectrum();
    if !uniserial_in_class(&f.system_at(n), m)? {
        return Ok(false);
    }
    let next = f.system_at(n + 1);
    finite_intervals(&next, "degreewise membership")?;
    for gap in &next.hull().gaps().explicit {
        if !h1_vanishes(spec, &KComplexRef::from(gap), m)? {
            return Ok(false);
        }
    }
    // A finite list has no dense classes, hence no tensor conditions.
    Ok(true)
}

/// Recovers a filtration on `window` from a degreewise membership oracle.
/// The rules outside the window are read off the degrees just outside it.
pub fn theta_recover(
    spec: &Spectrum,
    window: (i64, i64),
    oracle: impl Fn(i64, &UniserialModule) -> Result<bool>,
) -> Result<AdmissibleFiltration> {
    let (a, b) = window;
    if b < a {
        return Err(Error::Parse(format!("window {a}..{b} is empty")));
    }
    let probes: Vec<Prime> = match spec.kind() {
        SpectrumKind::OmegaPlusOne => {
            let mut v: Vec<Prime> = (0..=(b + 4).max(0) as u64)
                .map(|k| spec.step(k).expect("step"))
                .collect();
            v.push(spec.top());
            v
        }
        SpectrumKind::LexDouble => {
            return Err(Error::Unsupported(
                "recovery on the lexicographic double".into(),
            ))
        }
        _ => spec.primes().expect("finite spectrum"),
    };
    let at = |n: i64| recover_system_on(spec, &probes, |m| oracle(n, m));
    let systems = (a..=b).map(at).collect::<Result<Vec<_>>>()?;
    let before = at(a - 1)?;
    let below = if before.is_empty() {
        BelowRule::Empty
    } else if before == systems[0] {
        BelowRule::ConstantFirst
    } else {
        return Err(Error::InvalidOracle(format!(
            "degree {} is neither empty nor constant",
            a - 1
        )));
    };
    let mut above = None;
    for rule in [
        AboveRule::ConstantLast,
        AboveRule::Ex1Tail,
        AboveRule::Ex2Tail,
    ] {
        let Ok(candidate) = AdmissibleFiltration::new(spec, a, systems.clone(), below, rule) else {
            continue;
        };
        let mut matches = true;
        for n in b + 1..=b + 2 {
            matches &= candidate.system_at(n) == at(n)?;
        }
        if matches {
            above = Some(candidate);
            break;
        }
    }
    let f = above
        .ok_or_else(|| Error::InvalidOracle(format!("degrees above {b} follow no known rule")))?;
    let violations = f.validate()?;
    if let Some(v) = violations.first() {
        return Err(Error::InvalidOracle(format!(
            "degree {}: {}",
            v.degree, v.witness
        )));
    }
    Ok(f)
}

/// Degrees a generator family occupies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeSpan {
    At(i64),
    AtMost(i64),
    AtLeast(i64),
    All,
}

impl fmt::Display for DegreeSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSpan::At(n) => write!(f, "n = {n}"),
            DegreeSpan::AtMost(n) => write!(f, "n ≤ {n}"),
            DegreeSpan::AtLeast(n) => write!(f, "n ≥ {n}"),
            DegreeSpan::All => f.write_str("all n"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `K(below, above)` placed in degree `n`.
    KComplex { gap: String },
    /// A uniserial stalk placed in degree `n − 1`.
    UniserialStalk { module: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorDescriptor {
    pub kind: GeneratorKind,
    pub degrees: DegreeSpan,
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Family literals carry their parameter range after " : ".
        let split = |text: &str| match text.split_once(" : ") {
            Some((head, range)) => (head.to_string(), format!("{range}, ")),
            None => (text.to_string(), String::new()),
        };
        match &self.kind {
            GeneratorKind::KComplex { gap } => {
                let (head, range) = split(gap);
                write!(f, "K{head}[n] : {range}{}", self.degrees)
            }
            GeneratorKind::UniserialStalk { module } => {
                let (head, range) = split(module);
                write!(f, "{head}[n-1] : {range}{}", self.degrees)
            }
        }
    }
}

fn degree_generators(x: &AdmissibleSystem, degrees: DegreeSpan) -> Vec<GeneratorDescriptor> {
    let spec = x.spectrum();
    let mut out: Vec<GeneratorDescriptor> = x
        .gaps()
        .literals(spec)
        .into_iter()
        .map(|gap| GeneratorDescriptor {
            kind: GeneratorKind::KComplex { gap },
            degrees: degrees.clone(),
        })
        .collect();
    for class in x.dense_classes() {
        out.push(GeneratorDescriptor {
            kind: GeneratorKind::UniserialStalk {
                module: format!(
                    "R_{{q(x)}}/p(x) : x ∈ [{},{}] ∩ ℚ",
                    fmt_rational(&class.from),
                    fmt_rational(&class.to)
                ),
            },
            degrees: degrees.clone(),
        });
    }
    out
}

/// The tensor generators: test complexes of the gaps in each degree and
/// shifted interval modules of rational members of each dense class.
pub fn build_generators(f: &AdmissibleFiltration) -> Vec<GeneratorDescriptor> {
    let (a, b) = f.window();
    let systems = f.window_systems();
    let mut out = Vec::new();
    let constant_below = matches!(f.below(), BelowRule::ConstantFirst);
    let constant_above = matches!(f.above(), AboveRule::ConstantLast);
    if let BelowRule::Empty = f.below() {
        out.extend(degree_generators(
            &AdmissibleSystem::empty(f.spectrum()),
            DegreeSpan::AtMost(a - 1),
        ));
    }
    for (k, x) in systems.iter().enumerate() {
        let n = a + k as i64;
        let span = match (n == a && constant_below, n == b && constant_above) {
            (true, true) => DegreeSpan::All,
            (true, false) => DegreeSpan::AtMost(n),
            (false, true) => DegreeSpan::AtLeast(n),
            (false, false) => DegreeSpan::At(n),
        };
        out.extend(degree_generators(x, span));
    }
    let tail = |gap: &str| GeneratorDescriptor {
        kind: GeneratorKind::KComplex { gap: gap.into() },
        degrees: DegreeSpan::AtLeast(b + 1),
    };
    match f.above() {
        AboveRule::ConstantLast => {}
        AboveRule::Ex1Tail => out.push(tail("(q_n,m)")),
        AboveRule::Ex2Tail => out.push(tail("(q_n,R)")),
    }
    merge_spans(out)
}

/// Joins a family ending at `k` with the same generator placed at `k + 1`.
fn merge_spans(list: Vec<GeneratorDescriptor>) -> Vec<GeneratorDescriptor> {
    let mut out: Vec<GeneratorDescriptor> = Vec::new();
    for g in list {
        let joined = out.iter_mut().find(|h| h.kind == g.kind).and_then(|h| {
            let span = match (&h.degrees, &g.degrees) {
                (DegreeSpan::AtMost(k), DegreeSpan::At(n)) if *n == k + 1 => DegreeSpan::AtMost(*n),
                (DegreeSpan::AtMost(k), DegreeSpan::AtLeast(n)) if *n == k + 1 => DegreeSpan::All,
                (DegreeSpan::At(k), DegreeSpan::AtLeast(n)) if *n == k + 1 => {
                    DegreeSpan::AtLeast(*k)
                }
                _ => return None,
            };
            h.degrees = span;
            Some(())
        });
        if joined.is_none() {
            out.push(g);
        }
    }
    out
}

/// Test complexes of the gaps in degree `n`; needs a finite list there.
pub fn gap_complexes_at(f: &AdmissibleFiltration, n: i64) -> Result<Vec<KComplexRef>> {
    let x = f.system_at(n);
    finite_intervals(&x, "concrete generators")?;
    Ok(x.gaps().explicit.iter().map(KComplexRef::from).collect())
}

/// Vanishing of the generators of degree `k` against `M` seen in degree `n ≤ k`.
pub fn generators_vanish(
    f: &AdmissibleFiltration,
    k: i64,
    n: i64,
    m: &UniserialModule,
) -> Result<bool> {
    let spec = f.spectrum();
    for g in gap_complexes_at(f, k)? {
        if !h0_vanishes(&g, m)? {
            return Ok(false);
        }
        if k > n && !h1_vanishes(spec, &g, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tensor vanishing of `M` against every interval of a finite list.
pub fn tensor_vanishes_on(x: &AdmissibleSystem, m: &UniserialModule) -> Result<bool> {
    for chi in finite_intervals(x, "tensor vanishing")? {
        if !tensor_vanishes(&chi.upper, &chi.lower, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The local factor `R_q/p` of an interval, in readable form.
pub fn factor_descriptor(spec: &Spectrum, chi: &Interval) -> String {
    let (lower, upper) = (spec.name(&chi.lower), spec.name(&chi.upper));
    match (chi.lower.is_zero(), spec.is_top(&chi.upper)) {
        (true, true) => "R".into(),
        (true, false) if chi.upper.is_zero() => "Q".into(),
        (true, false) => format!("R_{{{upper}}}"),
        (false, true) => format!("R/{lower}"),
        (false, false) => format!("R_{{{upper}}}/{lower}"),
    }
}

/// Inverse of [`factor_descriptor`].
pub fn parse_factor(spec: &Spectrum, text: &str) -> Result<Interval> {
    let text = text.trim();
    let bad = || Error::Parse(format!("unrecognised factor `{text}`"));
    match text {
        "Q" => {
            return Ok(Interval {
                lower: spec.zero(),
                upper: spec.zero(),
            })
        }
        "R" => {
            return Ok(Interval {
                lower: spec.zero(),
                upper: spec.top(),
            })
        }
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("R/") {
        return Interval::new(spec, spec.prime(rest)?, spec.top());
    }
    let rest = text.strip_prefix("R_{").ok_or_else(bad)?;
    let close = rest.find('}').ok_or_else(bad)?;
    let upper = spec.prime(&rest[..close])?;
    match &rest[close + 1..] {
        "" => Interval::new(spec, spec.zero(), upper),
        tail => Interval::new(
            spec,
            spec.prime(tail.strip_prefix('/').ok_or_else(bad)?)?,
            upper,
        ),
    }
}

/// The ring of one degree: the product of the local factors, `0` when empty.
pub fn ring_descriptor(x: &AdmissibleSystem) -> String {
    let spec = x.spectrum();
    if x.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = x
        .runs()
        .iter()
        .map(|r| match r {
            Run::Single(i) => factor_descriptor(spec, i),
            Run::Full(p) => format!("∏_{{x ∈ {p}}} R_{{q(x)}}/p(x)"),
            Run::Points(p) => format!("∏_{{x ∈ {p}}} R_{{p(x)}}/p(x) × R_{{q(x)}}/q(x)"),
        })
        .collect();
    parts.join(" × ")
}

/// Inverse of [`ring_descriptor`] on finite lists.
pub fn parse_ring(spec: &Spectrum, text: &str) -> Result<AdmissibleSystem> {
    if text.trim() == "0" {
        return Ok(AdmissibleSystem::empty(spec));
    }
    let intervals = text
        .split('×')
        .map(|part| parse_factor(spec, part))
        .collect::<Result<Vec<_>>>()?;
    AdmissibleSystem::finite(spec, intervals)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainRing {
    pub degree: i64,
    pub ring: String,
}

/// A chain of homological ring epimorphisms, one epimorph per degree, each
/// named by its local factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiChain {
    #[serde(skip)]
    spectrum: Spectrum,
    #[serde(skip)]
    systems: Vec<AdmissibleSystem>,
    pub below: BelowRule,
    pub above: AboveRule,
    /// One ring per degree of the window.
    pub rings: Vec<ChainRing>,
    /// Every factor is a localisation `R_q`.
    pub flat: bool,
    /// The chain around the window, maps pointing to lower degrees.
    pub display: String,
}

pub fn filtration_to_chain(f: &AdmissibleFiltration) -> Result<EpiChain> {
    if let Some(n) = f
        .probe_degrees()
        .find(|&n| !f.system_at(n).is_nowhere_dense())
    {
        return Err(Error::NotNowhereDense(format!(
            "degree {n}: {}",
            f.system_at(n).literal()
        )));
    }
    let (a, b) = f.window();
    let rings = f
        .window_systems()
        .iter()
        .enumerate()
        .map(|(k, x)| ChainRing {
            degree: a + k as i64,
            ring: ring_descriptor(x),
        })
        .collect();
    let shown: Vec<String> = (a - 1..=b + 3)
        .map(|n| ring_descriptor(&f.system_at(n)))
        .collect();
    let flat = f.probe_degrees().chain(b + 2..=b + 3).all(|n| {
        f.system_at(n)
            .runs()
            .iter()
            .all(|r| matches!(r, Run::Single(i) if i.lower.is_zero()))
    });
    Ok(EpiChain {
        spectrum: f.spectrum().clone(),
        systems: f.window_systems().to_vec(),
        below: f.below(),
        above: f.above(),
        rings,
        flat,
        display: format!("… ← {} ← …", shown.join(" ← ")),
    })
}

/// Rebuilds the filtration from the ring descriptors; parametric factors are
/// taken from the stored systems.
pub fn chain_to_filtration(chain: &EpiChain) -> Result<AdmissibleFiltration> {
    let spec = &chain.spectrum;
    let mut systems = Vec::new();
    for (ring, stored) in chain.rings.iter().zip(&chain.systems) {
        let x = if stored.is_finite_list() {
            parse_ring(spec, &ring.ring)?
        } else {
            stored.clone()
        };
        if !x.is_nowhere_dense() {
            return Err(Error::NotNowhereDense(ring.ring.clone()));
        }
        systems.push(x);
    }
    let start = chain.rings.first().map_or(0, |r| r.degree);
    let f = AdmissibleFiltration::new(spec, start, systems, chain.below, chain.above)?;
    if let Some(v) = f.validate()?.first() {
        return Err(Error::InvalidOracle(format!(
            "chain is not nested at degree {}: {}",
            v.degree, v.witness
        )));
    }
    Ok(f)
}
