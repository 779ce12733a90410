//! Symbolic ideals and submodules of the quotient field.
//!
//! A submodule `U ⊆ Q` is modelled by the upper set of the value group it
//! occupies. Such an upper set is determined by three pieces of data:
//!
//! * its stabiliser, which is the attached prime `U^#`;
//! * the position of its boundary modulo the stabiliser, kept as a *lead*:
//!   for every archimedean slot (a jump `pred(hi) ⊊ hi` of the spectrum) an
//!   integer combination of formal positive generators;
//! * whether the boundary is attained (`closed`), which for a nonzero lead
//!   means `U ≅ R_{U^#}` rather than `U ≅ U^#`.
//!
//! Every generic ideal token owns its own formal generator, so two generic
//! tokens sharing a slot are incomparable unless they are the same token.
//! Non-idempotent slots additionally carry the formal unit step, which makes
//! `p = π·R_p` exact for a non-idempotent prime `p`. Sums, residuals and
//! inclusions are exact on this representation; anything that would require
//! comparing two independent generators raises
//! [`Error::IncomparableSymbolic`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::spectrum::{Prime, Spectrum};
use crate::systems::Interval;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Generator {
    /// The smallest positive element of a discrete slot.
    Unit,
    /// The generator of the generic token with this attached prime and flag.
    Token { attached: Prime, iso_loc: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct Lead {
    /// Slot (named by its upper prime) ↦ coefficients; smaller slots are more
    /// significant.
    slots: BTreeMap<Prime, BTreeMap<Generator, i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Negative,
    Zero,
    Positive,
    /// Negative or zero; arises only in discrete slots.
    AtMostZero,
    /// Positive or zero; arises only in discrete slots.
    AtLeastZero,
}

impl Lead {
    fn single(slot: Prime, g: Generator, coeff: i64) -> Lead {
        let mut lead = Lead::default();
        lead.slots.entry(slot).or_default().insert(g, coeff);
        lead
    }

    fn combine(&self, other: &Lead, factor: i64) -> Lead {
        let mut out = self.clone();
        for (slot, form) in &other.slots {
            let target = out.slots.entry(slot.clone()).or_default();
            for (g, c) in form {
                *target.entry(g.clone()).or_insert(0) += factor * c;
            }
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        for form in self.slots.values_mut() {
            form.retain(|_, c| *c != 0);
        }
        self.slots.retain(|_, form| !form.is_empty());
    }

    /// Keep the slots that survive localisation at `att`.
    fn truncate(&self, att: &Prime) -> Lead {
        Lead {
            slots: self
                .slots
                .iter()
                .filter(|(s, _)| *s <= att)
                .map(|(s, f)| (s.clone(), f.clone()))
                .collect(),
        }
    }

    fn sign(&self) -> Result<Sign> {
        let mut slots = self.slots.iter();
        let Some((slot, form)) = slots.next() else {
            return Ok(Sign::Zero);
        };
        let incomparable = || {
            Err(Error::IncomparableSymbolic(format!(
                "two independent generators meet in the slot below the prime at {:?}",
                slot.point()
            )))
        };
        if form.values().all(|c| *c > 0) {
            return Ok(Sign::Positive);
        }
        if form.values().all(|c| *c < 0) {
            return Ok(Sign::Negative);
        }
        if slot.is_idempotent() {
            return incomparable();
        }
        // A discrete slot: the unit step is its least positive element. A
        // token attached to the slot's own prime is a power `p^k` with
        // `k ≥ 2` (`k = 1` is the prime itself); other tokens are at least
        // one step.
        let least = |g: &Generator| match g {
            Generator::Token { attached, .. } if attached == slot => 2,
            _ => 1,
        };
        let tokens: Vec<i64> = form
            .iter()
            .filter(|(g, _)| **g != Generator::Unit)
            .map(|(_, c)| *c)
            .collect();
        let extreme: i64 = form.iter().map(|(g, c)| c * least(g)).sum();
        let rest = || {
            Lead {
                slots: slots.clone().map(|(s, f)| (s.clone(), f.clone())).collect(),
            }
            .sign()
        };
        if tokens.iter().all(|c| *c <= 0) {
            return match extreme.cmp(&0) {
                std::cmp::Ordering::Less => Ok(Sign::Negative),
                std::cmp::Ordering::Equal => match rest()? {
                    Sign::Negative => Ok(Sign::Negative),
                    Sign::Zero | Sign::AtMostZero => Ok(Sign::AtMostZero),
                    _ => incomparable(),
                },
                std::cmp::Ordering::Greater => incomparable(),
            };
        }
        if tokens.iter().all(|c| *c >= 0) {
            return match extreme.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Sign::Positive),
                std::cmp::Ordering::Equal => match rest()? {
                    Sign::Positive => Ok(Sign::Positive),
                    Sign::Zero | Sign::AtLeastZero => Ok(Sign::AtLeastZero),
                    _ => incomparable(),
                },
                std::cmp::Ordering::Less => incomparable(),
            };
        }
        incomparable()
    }

    fn leading_slot(&self) -> Option<&Prime> {
        self.slots.keys().next()
    }
}

/// An `R`-submodule of the quotient field `Q`, up to the symbolic precision
/// described in the module documentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSubmodule {
    attached: Prime,
    lead: Lead,
    closed: bool,
}

/// Proper ideal described by the data the classification criteria consume.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealPos {
    /// Largest prime contained in the ideal.
    pub lo: Prime,
    /// Smallest prime containing the ideal.
    pub hi: Prime,
    /// The attached prime `I^#`.
    pub attached: Prime,
    pub is_prime: bool,
    /// `I ≅ R_{I^#}`: a principal multiple of the localisation.
    pub iso_loc: bool,
}

/// Result of operations that may leave the proper ideals.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RIdeal {
    Proper(IdealPos),
    /// The ring itself.
    Whole,
}

/// Readable classification of a [`QSubmodule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmoduleForm {
    Zero,
    Ideal(IdealPos),
    /// `R_p`; `R_0 = Q` and `R_m = R`.
    Loc(Prime),
    /// `x⁻¹·R_a` (or `x⁻¹·a`) for `x` generic with leading slot `hi`: strictly
    /// between `R_hi` and `R_{pred(hi)}`.
    Fractional {
        hi: Prime,
        attached: Prime,
        iso_loc: bool,
    },
}

impl IdealPos {
    pub fn prime(spec: &Spectrum, p: &Prime) -> Result<IdealPos> {
        spec.check(p)?;
        Ok(IdealPos {
            lo: p.clone(),
            hi: p.clone(),
            attached: p.clone(),
            is_prime: true,
            iso_loc: !p.is_idempotent(),
        })
    }

    /// A non-prime ideal whose value boundary sits in the slot just below
    /// `hi`, with attached prime `attached ⊇ hi`.
    pub fn generic(
        spec: &Spectrum,
        hi: &Prime,
        attached: &Prime,
        iso_loc: bool,
    ) -> Result<IdealPos> {
        let lo = spec.pred(hi).ok_or_else(|| {
            Error::InvalidIdeal(format!(
                "prime {} has no immediate predecessor",
                spec.name(hi)
            ))
        })?;
        let pos = IdealPos {
            lo,
            hi: hi.clone(),
            attached: attached.clone(),
            is_prime: false,
            iso_loc,
        };
        pos.validate(spec)?;
        Ok(pos)
    }

    pub fn validate(&self, spec: &Spectrum) -> Result<()> {
        for p in [&self.lo, &self.hi, &self.attached] {
            spec.check(p)?;
        }
        let bad = |m: &str| Err(Error::InvalidIdeal(format!("{}: {m}", self.literal(spec))));
        if self.is_prime {
            if self.lo != self.hi || self.hi != self.attached {
                return bad("a prime is its own bounds and attached prime");
            }
            if self.iso_loc == self.attached.is_idempotent() {
                return bad(
                    "a prime is isomorphic to its localisation exactly when it is not idempotent",
                );
            }
            return Ok(());
        }
        if spec.pred(&self.hi).as_ref() != Some(&self.lo) {
            return bad("lo must be the immediate predecessor of hi");
        }
        if self.hi > self.attached {
            return bad("the attached prime must contain hi");
        }
        if !self.iso_loc && !self.attached.is_idempotent() {
            return bad(
                "an ideal isomorphic to a non-idempotent prime is isomorphic to its localisation",
            );
        }
        Ok(())
    }

    pub fn literal(&self, spec: &Spectrum) -> String {
        if self.is_prime {
            if self.attached.is_zero() {
                return "zero".into();
            }
            format!("prime:{}", spec.name(&self.attached))
        } else {
            format!(
                "gen:lo={},att={},isoloc={}",
                spec.name(&self.lo),
                spec.name(&self.attached),
                self.iso_loc
            )
        }
    }

    pub fn to_submodule(&self) -> QSubmodule {
        if self.is_prime {
            return QSubmodule::prime(&self.attached);
        }
        let g = Generator::Token {
            attached: self.attached.clone(),
            iso_loc: self.iso_loc,
        };
        QSubmodule::build(
            self.attached.clone(),
            Lead::single(self.hi.clone(), g, 1),
            self.iso_loc,
        )
    }
}

impl RIdeal {
    pub fn literal(&self, spec: &Spectrum) -> String {
        match self {
            RIdeal::Proper(i) => i.literal(spec),
            RIdeal::Whole => "R".into(),
        }
    }

    pub fn to_submodule(&self, spec: &Spectrum) -> QSubmodule {
        match self {
            RIdeal::Proper(i) => i.to_submodule(),
            RIdeal::Whole => QSubmodule::ring(spec),
        }
    }
}

impl QSubmodule {
    fn build(attached: Prime, lead: Lead, closed: bool) -> QSubmodule {
        let mut lead = lead.truncate(&attached);
        let mut closed = closed;
        if attached.is_zero() {
            lead = Lead::default();
        } else if !closed && !attached.is_idempotent() {
            // Over a discrete top slot an open boundary is the closed one a
            // unit step higher.
            lead = lead.combine(&Lead::single(attached.clone(), Generator::Unit, 1), 1);
            closed = true;
        }
        QSubmodule {
            attached,
            lead,
            closed,
        }
    }

    pub fn zero(spec: &Spectrum) -> QSubmodule {
        QSubmodule::build(spec.zero(), Lead::default(), false)
    }

    /// The quotient field.
    pub fn field(spec: &Spectrum) -> QSubmodule {
        QSubmodule::loc(&spec.zero())
    }

    pub fn ring(spec: &Spectrum) -> QSubmodule {
        QSubmodule::loc(&spec.top())
    }

    /// The localisation `R_p`.
    pub fn loc(p: &Prime) -> QSubmodule {
        QSubmodule::build(p.clone(), Lead::default(), true)
    }

    pub fn prime(p: &Prime) -> QSubmodule {
        QSubmodule::build(p.clone(), Lead::default(), false)
    }

    pub fn from_form(spec: &Spectrum, form: &SubmoduleForm) -> Result<QSubmodule> {
        Ok(match form {
            SubmoduleForm::Zero => QSubmodule::zero(spec),
            SubmoduleForm::Ideal(i) => {
                i.validate(spec)?;
                i.to_submodule()
            }
            SubmoduleForm::Loc(p) => {
                spec.check(p)?;
                QSubmodule::loc(p)
            }
            SubmoduleForm::Fractional {
                hi,
                attached,
                iso_loc,
            } => {
                let token = IdealPos::generic(spec, hi, attached, *iso_loc)?;
                let g = Generator::Token {
                    attached: token.attached.clone(),
                    iso_loc: *iso_loc,
                };
                QSubmodule::build(attached.clone(), Lead::single(hi.clone(), g, -1), *iso_loc)
            }
        })
    }

    /// The attached prime `U^#`; the zero module is attached to `0` by convention.
    pub fn attached(&self) -> &Prime {
        &self.attached
    }

    pub fn is_zero(&self) -> bool {
        self.attached.is_zero() && !self.closed
    }

    /// `U·V`, the submodule generated by products.
    pub fn product(&self, other: &QSubmodule) -> QSubmodule {
        let (a, b) = if self.attached <= other.attached {
            (self, other)
        } else {
            (other, self)
        };
        if a.attached < b.attached {
            QSubmodule::build(
                a.attached.clone(),
                a.lead.combine(&b.lead.truncate(&a.attached), 1),
                a.closed,
            )
        } else {
            QSubmodule::build(
                a.attached.clone(),
                a.lead.combine(&b.lead, 1),
                a.closed && b.closed,
            )
        }
    }

    /// `U·R_q`.
    pub fn localize(&self, q: &Prime) -> QSubmodule {
        self.product(&QSubmodule::loc(q))
    }

    /// `(U : V) = {x ∈ Q : x·V ⊆ U}`.
    pub fn residual(&self, by: &QSubmodule) -> QSubmodule {
        if by.attached < self.attached {
            // Only the part of `self` stable under the larger stabiliser of
            // `by` can absorb translates of `by`.
            let core =
                QSubmodule::build(by.attached.clone(), self.lead.truncate(&by.attached), false);
            return core.residual(by);
        }
        let lead = self.lead.combine(&by.lead.truncate(&self.attached), -1);
        let closed = self.closed || (by.attached == self.attached && !by.closed);
        QSubmodule::build(self.attached.clone(), lead, closed)
    }

    /// Whether `1 ∈ U`, i.e. `R ⊆ U`.
    pub fn contains_one(&self) -> Result<bool> {
        Ok(match self.lead.sign()? {
            Sign::Negative => true,
            Sign::Positive => false,
            Sign::Zero => self.closed,
            Sign::AtMostZero if self.closed => true,
            Sign::AtLeastZero if !self.closed => false,
            Sign::AtMostZero | Sign::AtLeastZero => {
                return Err(Error::IncomparableSymbolic(
                    "a boundary may sit exactly at 1 inside a discrete slot".into(),
                ))
            }
        })
    }

    pub fn is_subset(&self, other: &QSubmodule) -> Result<bool> {
        if self == other {
            return Ok(true);
        }
        other.residual(self).contains_one()
    }

    pub fn meet(&self, other: &QSubmodule) -> Result<QSubmodule> {
        Ok(if self.is_subset(other)? {
            self.clone()
        } else {
            other.clone()
        })
    }

    pub fn join(&self, other: &QSubmodule) -> Result<QSubmodule> {
        Ok(if self.is_subset(other)? {
            other.clone()
        } else {
            self.clone()
        })
    }

    pub fn form(&self, spec: &Spectrum) -> Result<SubmoduleForm> {
        if self.attached.is_zero() {
            return Ok(if self.closed {
                SubmoduleForm::Loc(self.attached.clone())
            } else {
                SubmoduleForm::Zero
            });
        }
        let sign = self.lead.sign()?;
        let Some(slot) = self.lead.leading_slot().cloned() else {
            return Ok(if self.closed {
                SubmoduleForm::Loc(self.attached.clone())
            } else {
                SubmoduleForm::Ideal(IdealPos::prime(spec, &self.attached)?)
            });
        };
        match sign {
            Sign::AtMostZero | Sign::AtLeastZero => Err(Error::IncomparableSymbolic(
                "the boundary may coincide with a unit step of a discrete slot".into(),
            )),
            Sign::Positive => {
                if *self == QSubmodule::prime(&slot) {
                    return Ok(SubmoduleForm::Ideal(IdealPos::prime(spec, &slot)?));
                }
                let lo = spec.pred(&slot).expect("slots are jumps of the spectrum");
                Ok(SubmoduleForm::Ideal(IdealPos {
                    lo,
                    hi: slot,
                    attached: self.attached.clone(),
                    is_prime: false,
                    iso_loc: self.closed,
                }))
            }
            _ => Ok(SubmoduleForm::Fractional {
                hi: slot,
                attached: self.attached.clone(),
                iso_loc: self.closed,
            }),
        }
    }

    /// The proper ideal `U ∩ R`, or the ring when `R ⊆ U`.
    pub fn meet_ring(&self, spec: &Spectrum) -> Result<RIdeal> {
        if self.contains_one()? {
            return Ok(RIdeal::Whole);
        }
        match self.form(spec)? {
            SubmoduleForm::Zero => Ok(RIdeal::Proper(IdealPos::prime(spec, &spec.zero())?)),
            SubmoduleForm::Ideal(i) => Ok(RIdeal::Proper(i)),
            other => unreachable!("a submodule missing 1 is an ideal, got {other:?}"),
        }
    }

    pub fn literal(&self, spec: &Spectrum) -> String {
        match self.form(spec) {
            Ok(form) => form_literal(spec, &form),
            Err(_) => format!("<submodule attached to {}>", spec.name(&self.attached)),
        }
    }
}

pub fn form_literal(spec: &Spectrum, form: &SubmoduleForm) -> String {
    match form {
        SubmoduleForm::Zero => "zero".into(),
        SubmoduleForm::Ideal(i) => i.literal(spec),
        SubmoduleForm::Loc(p) if p.is_zero() => "Q".into(),
        SubmoduleForm::Loc(p) => format!("loc:{}", spec.name(p)),
        SubmoduleForm::Fractional {
            hi,
            attached,
            iso_loc,
        } => format!(
            "frac:lo={},att={},isoloc={}",
            spec.pred(hi).map(|p| spec.name(&p)).unwrap_or_default(),
            spec.name(attached),
            iso_loc
        ),
    }
}

/// `p_χ ⊆ I ⊆ I^# ⊆ q_χ`.
pub fn in_angle(ideal: &IdealPos, chi: &Interval) -> bool {
    chi.lower <= ideal.lo && ideal.attached <= chi.upper
}

/// `(I : J) ∩ R`.
pub fn colon(spec: &Spectrum, inner: &QSubmodule, outer: &QSubmodule) -> Result<RIdeal> {
    if !inner.is_subset(outer)? {
        return Err(Error::NotContained {
            inner: inner.literal(spec),
            outer: outer.literal(spec),
        });
    }
    inner.residual(outer).meet_ring(spec)
}

/// The `q`-saturation `{a ∈ R : s·a ∈ I for some s ∉ q}`.
pub fn saturate(spec: &Spectrum, ideal: &IdealPos, q: &Prime) -> Result<RIdeal> {
    spec.check(q)?;
    if ideal.attached <= *q {
        return Ok(RIdeal::Proper(ideal.clone()));
    }
    ideal.to_submodule().localize(q).meet_ring(spec)
}

/// A standard uniserial module `J/I` with `I ⊆ J ⊆ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniserialModule {
    pub num: QSubmodule,
    pub den: QSubmodule,
}

impl UniserialModule {
    pub fn new(spec: &Spectrum, num: QSubmodule, den: QSubmodule) -> Result<UniserialModule> {
        if !den.is_subset(&num)? {
            return Err(Error::NotContained {
                inner: den.literal(spec),
                outer: num.literal(spec),
            });
        }
        Ok(UniserialModule { num, den })
    }

    /// `R/I`.
    pub fn cyclic(spec: &Spectrum, ideal: &RIdeal) -> UniserialModule {
        UniserialModule {
            num: QSubmodule::ring(spec),
            den: ideal.to_submodule(spec),
        }
    }

    /// `R_q/p` for primes `p`, `q` (any order: `p ⊆ R_q` always holds).
    pub fn interval(q: &Prime, p: &Prime) -> UniserialModule {
        UniserialModule {
            num: QSubmodule::loc(q),
            den: QSubmodule::prime(p),
        }
    }

    /// The residue field `κ(p) = R_p/p`.
    pub fn residue_field(p: &Prime) -> UniserialModule {
        UniserialModule::interval(p, p)
    }

    pub fn is_zero(&self) -> bool {
        self.num == self.den
    }

    pub fn literal(&self, spec: &Spectrum) -> String {
        format!("{} / {}", self.num.literal(spec), self.den.literal(spec))
    }
}

/// `Γ_q(M) = (I·R_q ∩ J)/I`.
pub fn gamma_part(m: &UniserialModule, q: &Prime) -> Result<UniserialModule> {
    Ok(UniserialModule {
        num: m.den.localize(q).meet(&m.num)?,
        den: m.den.clone(),
    })
}

/// `F_q(M) = M/Γ_q(M) = J/(I·R_q ∩ J)`.
pub fn f_part(m: &UniserialModule, q: &Prime) -> Result<UniserialModule> {
    Ok(UniserialModule {
        num: m.num.clone(),
        den: m.den.localize(q).meet(&m.num)?,
    })
}

/// `Soc_p(M) = ((I : p) ∩ J)/I`.
pub fn soc_part(m: &UniserialModule, p: &Prime) -> Result<UniserialModule> {
    Ok(UniserialModule {
        num: m.den.residual(&QSubmodule::prime(p)).meet(&m.num)?,
        den: m.den.clone(),
    })
}

/// `M = s·M` for every `s ∉ q`.
pub fn is_q_divisible(spec: &Spectrum, m: &UniserialModule, q: &Prime) -> bool {
    m.is_zero() || spec.is_top(q) || m.num.attached() <= q
}

/// Every prime and every generic token of a finite spectrum.
pub fn ideal_vocabulary(spec: &Spectrum) -> Vec<IdealPos> {
    let Some(primes) = spec.primes() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p in &primes {
        out.push(IdealPos::prime(spec, p).expect("own prime"));
    }
    for hi in primes.iter().skip(1) {
        for att in primes.iter().filter(|a| *a >= hi) {
            for iso in [true, false] {
                if let Ok(g) = IdealPos::generic(spec, hi, att, iso) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Zero, every localisation and every ideal token of a finite spectrum.
pub fn submodule_vocabulary(spec: &Spectrum) -> Vec<QSubmodule> {
    let mut out = vec![QSubmodule::zero(spec)];
    for p in spec.primes().unwrap_or_default() {
        out.push(QSubmodule::loc(&p));
    }
    for i in ideal_vocabulary(spec) {
        let s = i.to_submodule();
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// All `J/I` over the submodule vocabulary with `J ≠ 0` and `I ⊆ J`
/// decidable; pairs whose inclusion is symbolically undecided are left out.
pub fn uniserial_vocabulary(spec: &Spectrum) -> Vec<UniserialModule> {
    let subs = submodule_vocabulary(spec);
    let mut out = Vec::new();
    for num in subs.iter().filter(|s| !s.is_zero()) {
        for den in &subs {
            if let Ok(true) = den.is_subset(num) {
                out.push(UniserialModule {
                    num: num.clone(),
                    den: den.clone(),
                });
            }
        }
    }
    out
}

/// `R/I` for every ideal token, plus `R/R = 0`.
pub fn cyclic_vocabulary(spec: &Spectrum) -> Vec<RIdeal> {
    let mut out: Vec<RIdeal> = ideal_vocabulary(spec)
        .into_iter()
        .map(RIdeal::Proper)
        .collect();
    out.push(RIdeal::Whole);
    out
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Unit => f.write_str("unit"),
            Generator::Token { iso_loc, .. } => write!(f, "token(iso={iso_loc})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Spectrum {
        Spectrum::finite_chain(vec![
            ("0".into(), true),
            ("q".into(), true),
            ("m".into(), true),
        ])
        .unwrap()
    }

    #[test]
    fn powers_of_a_discrete_prime_sit_below_it() {
        let s = Spectrum::finite_chain(vec![
            ("0".into(), true),
            ("a".into(), false),
            ("m".into(), true),
        ])
        .unwrap();
        let a = s.prime("a").unwrap();
        let power = IdealPos::generic(&s, &a, &a, true).unwrap().to_submodule();
        let prime = QSubmodule::prime(&a);
        assert!(power.is_subset(&prime).unwrap());
        assert!(!prime.is_subset(&power).unwrap());
        let m = UniserialModule::new(&s, prime, power).unwrap();
        assert!(!m.is_zero());
        // A token attached higher up may sit exactly one step into the slot.
        let wide = IdealPos::generic(&s, &a, &s.top(), true)
            .unwrap()
            .to_submodule();
        assert!(wide.is_subset(&QSubmodule::prime(&a)).unwrap());
    }

    #[test]
    fn localisations_are_ordered_backwards() {
        let s = chain3();
        let q = s.prime("q").unwrap();
        let m = s.top();
        assert!(QSubmodule::loc(&m).is_subset(&QSubmodule::loc(&q)).unwrap());
        assert!(!QSubmodule::loc(&q).is_subset(&QSubmodule::loc(&m)).unwrap());
        assert!(QSubmodule::prime(&q)
            .is_subset(&QSubmodule::loc(&m))
            .unwrap());
    }

    #[test]
    fn residue_field_annihilator() {
        let s = chain3();
        let q = s.prime("q").unwrap();
        let ann = colon(&s, &QSubmodule::prime(&q), &QSubmodule::loc(&q)).unwrap();
        assert_eq!(ann, RIdeal::Proper(IdealPos::prime(&s, &q).unwrap()));
    }

    #[test]
    fn field_is_faithful() {
        let s = chain3();
        let ann = colon(&s, &QSubmodule::zero(&s), &QSubmodule::field(&s)).unwrap();
        assert_eq!(ann, RIdeal::Proper(IdealPos::prime(&s, &s.zero()).unwrap()));
    }

    #[test]
    fn saturation_of_maximal_ideal_is_whole() {
        let s = chain3();
        let m = IdealPos::prime(&s, &s.top()).unwrap();
        assert_eq!(
            saturate(&s, &m, &s.prime("q").unwrap()).unwrap(),
            RIdeal::Whole
        );
    }

    #[test]
    fn non_idempotent_prime_is_principal_over_its_localisation() {
        let s = Spectrum::two_point(false);
        let m = QSubmodule::prime(&s.top());
        // m·m ⊊ m when m is not idempotent.
        let sq = m.product(&m);
        assert!(sq.is_subset(&m).unwrap());
        assert!(!m.is_subset(&sq).unwrap());
        // while an idempotent maximal ideal squares to itself
        let t = Spectrum::two_point(true);
        let mt = QSubmodule::prime(&t.top());
        assert_eq!(mt.product(&mt), mt);
    }

    #[test]
    fn same_slot_tokens_are_incomparable() {
        let s = chain3();
        let m = s.top();
        let a = IdealPos::generic(&s, &m, &m, true).unwrap().to_submodule();
        let b = IdealPos::generic(&s, &m, &m, false).unwrap().to_submodule();
        assert!(matches!(
            a.is_subset(&b),
            Err(Error::IncomparableSymbolic(_))
        ));
        assert!(a.is_subset(&a).unwrap());
    }

    #[test]
    fn vocabulary_of_two_point_chain() {
        let s = Spectrum::two_point(true);
        let lits: Vec<String> = cyclic_vocabulary(&s)
            .iter()
            .map(|i| i.literal(&s))
            .collect();
        assert_eq!(
            lits,
            [
                "zero",
                "prime:m",
                "gen:lo=0,att=m,isoloc=true",
                "gen:lo=0,att=m,isoloc=false",
                "R"
            ]
        );
    }
}
