//! Prime spectra of valuation domains.
//!
//! A [`Spectrum`] is a bounded complete chain of primes with an idempotency
//! flag on every prime. Four constructor families are supported: finite
//! chains (including the two-point chain), the chain `q_0 ⊊ q_1 ⊊ … ⊊ m` of
//! order type ω+1, and the lexicographic double `[0,1] × {0,1}` with rational
//! coordinates.
//!
//! Primes carry a fingerprint of the spectrum they were created from, so
//! mixing primes of different spectra is detected instead of silently
//! comparing unrelated positions.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::{fmt_rational, parse_rational, ParamSet, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    FiniteChain,
    TwoPoint,
    OmegaPlusOne,
    LexDouble,
}

/// Position of a prime inside its spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// Position in a finite chain, `0` being the zero prime.
    Index(usize),
    /// `q_n` in the ω+1 chain; `Step(0)` is the zero prime.
    Step(u64),
    /// The maximal ideal of the ω+1 chain.
    Top,
    /// `p_x` (`upper = false`) or `q_x` (`upper = true`) in the lexicographic double.
    Lex { x: Rational, upper: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime {
    spectrum: u64,
    point: Point,
    idempotent: bool,
}

impl Prime {
    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn spectrum_id(&self) -> u64 {
        self.spectrum
    }

    pub fn is_zero(&self) -> bool {
        match &self.point {
            Point::Index(i) => *i == 0,
            Point::Step(n) => *n == 0,
            Point::Top => false,
            Point::Lex { x, upper } => !upper && x.is_zero(),
        }
    }

    /// Parameter and side of a prime of the lexicographic double.
    pub fn lex_coordinate(&self) -> Option<(&Rational, bool)> {
        match &self.point {
            Point::Lex { x, upper } => Some((x, *upper)),
            _ => None,
        }
    }
}

/// A prime or one of the two sentinels `−∞ < every prime < R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtPrime {
    NegInfinity,
    Prime(Prime),
    RingTop,
}

impl ExtPrime {
    pub fn as_prime(&self) -> Option<&Prime> {
        match self {
            ExtPrime::Prime(p) => Some(p),
            _ => None,
        }
    }
}

impl From<Prime> for ExtPrime {
    fn from(p: Prime) -> Self {
        ExtPrime::Prime(p)
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Shape {
    Chain {
        names: Vec<String>,
        idempotent: Vec<bool>,
    },
    Omega {
        q_idempotent: bool,
    },
    Lex,
}

#[derive(Debug)]
struct Inner {
    id: u64,
    kind: SpectrumKind,
    shape: Shape,
}

/// A describable set of primes, the input of [`Spectrum::sup`] and [`Spectrum::inf`].
#[derive(Clone, Debug)]
pub enum PrimeSubset {
    Finite(Vec<Prime>),
    /// `{q_n : n ≥ from}` together with finitely many extra primes.
    OmegaTail {
        from: u64,
        extra: Vec<Prime>,
    },
    /// `{p_x : x ∈ params}` and/or `{q_x : x ∈ params}` plus extra primes.
    Lex {
        params: ParamSet,
        lower: bool,
        upper: bool,
        extra: Vec<Prime>,
    },
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    inner: Arc<Inner>,
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for Spectrum {}

impl Spectrum {
    fn build(kind: SpectrumKind, shape: Shape) -> Spectrum {
        let mut h = DefaultHasher::new();
        shape.hash(&mut h);
        std::mem::discriminant(&kind).hash(&mut h);
        Spectrum {
            inner: Arc::new(Inner {
                id: h.finish(),
                kind,
                shape,
            }),
        }
    }

    /// A finite chain listed from the zero prime up to the maximal ideal.
    pub fn finite_chain(primes: Vec<(String, bool)>) -> Result<Spectrum> {
        if primes.is_empty() {
            return Err(Error::InvalidSpectrum(
                "a chain needs at least one prime".into(),
            ));
        }
        if !primes[0].1 {
            return Err(Error::InvalidSpectrum(format!(
                "the zero prime `{}` must be idempotent",
                primes[0].0
            )));
        }
        for (i, (name, _)) in primes.iter().enumerate() {
            if name.is_empty() || name.contains([',', '/', ' ', ':', '=']) {
                return Err(Error::InvalidSpectrum(format!(
                    "unusable prime name `{name}`"
                )));
            }
            if primes[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::InvalidSpectrum(format!(
                    "duplicate prime name `{name}`"
                )));
            }
        }
        let (names, idempotent) = primes.into_iter().unzip();
        Ok(Spectrum::build(
            SpectrumKind::FiniteChain,
            Shape::Chain { names, idempotent },
        ))
    }

    /// `0 ⊊ m`.
    pub fn two_point(m_idempotent: bool) -> Spectrum {
        Spectrum::build(
            SpectrumKind::TwoPoint,
            Shape::Chain {
                names: vec!["0".into(), "m".into()],
                idempotent: vec![true, m_idempotent],
            },
        )
    }

    /// `0 = q_0 ⊊ q_1 ⊊ … ⊊ m`; `m` is a union of a strictly increasing chain
    /// and therefore idempotent. The flag governs `q_n` for `n ≥ 1`.
    pub fn omega_plus_one(q_idempotent: bool) -> Spectrum {
        Spectrum::build(SpectrumKind::OmegaPlusOne, Shape::Omega { q_idempotent })
    }

    /// `[0,1] × {0,1}` ordered lexicographically, every prime idempotent.
    pub fn lex_double() -> Spectrum {
        Spectrum::build(SpectrumKind::LexDouble, Shape::Lex)
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn kind(&self) -> SpectrumKind {
        self.inner.kind
    }

    /// Names and idempotency flags of a finite chain, from the bottom.
    pub fn chain_primes(&self) -> Option<Vec<(String, bool)>> {
        match &self.inner.shape {
            Shape::Chain { names, idempotent } => Some(
                names
                    .iter()
                    .cloned()
                    .zip(idempotent.iter().copied())
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Idempotency of `q_n` (`n ≥ 1`) on the ω+1 chain.
    pub fn steps_idempotent(&self) -> Option<bool> {
        match &self.inner.shape {
            Shape::Omega { q_idempotent } => Some(*q_idempotent),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.inner.shape, Shape::Chain { .. })
    }

    fn make(&self, point: Point) -> Prime {
        let idempotent = match (&self.inner.shape, &point) {
            (Shape::Chain { idempotent, .. }, Point::Index(i)) => idempotent[*i],
            (Shape::Omega { q_idempotent }, Point::Step(n)) => *n == 0 || *q_idempotent,
            (Shape::Omega { .. }, Point::Top) => true,
            (Shape::Lex, Point::Lex { .. }) => true,
            _ => unreachable!("point does not belong to this spectrum"),
        };
        Prime {
            spectrum: self.inner.id,
            point,
            idempotent,
        }
    }

    pub fn zero(&self) -> Prime {
        match &self.inner.shape {
            Shape::Chain { .. } => self.make(Point::Index(0)),
            Shape::Omega { .. } => self.make(Point::Step(0)),
            Shape::Lex => self.make(Point::Lex {
                x: Rational::zero(),
                upper: false,
            }),
        }
    }

    pub fn top(&self) -> Prime {
        match &self.inner.shape {
            Shape::Chain { names, .. } => self.make(Point::Index(names.len() - 1)),
            Shape::Omega { .. } => self.make(Point::Top),
            Shape::Lex => self.make(Point::Lex {
                x: Rational::one(),
                upper: true,
            }),
        }
    }

    /// `q_n` of the ω+1 chain.
    pub fn step(&self, n: u64) -> Result<Prime> {
        match &self.inner.shape {
            Shape::Omega { .. } => Ok(self.make(Point::Step(n))),
            _ => Err(Error::Unsupported(
                "q_n primes exist only on the ω+1 chain".into(),
            )),
        }
    }

    /// `p_x` (`upper = false`) or `q_x` of the lexicographic double.
    pub fn lex(&self, x: Rational, upper: bool) -> Result<Prime> {
        match &self.inner.shape {
            Shape::Lex if x >= Rational::zero() && x <= Rational::one() => {
                Ok(self.make(Point::Lex { x, upper }))
            }
            Shape::Lex => Err(Error::UnknownPrime(format!(
                "parameter {} outside [0,1]",
                fmt_rational(&x)
            ))),
            _ => Err(Error::Unsupported(
                "p_x/q_x primes exist only on the lexicographic double".into(),
            )),
        }
    }

    /// All primes, in increasing order, of a finite chain.
    pub fn primes(&self) -> Option<Vec<Prime>> {
        match &self.inner.shape {
            Shape::Chain { names, .. } => Some(
                (0..names.len())
                    .map(|i| self.make(Point::Index(i)))
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn check(&self, p: &Prime) -> Result<()> {
        if p.spectrum == self.inner.id {
            Ok(())
        } else {
            Err(Error::MixedSpectrum)
        }
    }

    pub fn compare(&self, a: &Prime, b: &Prime) -> Result<Ordering> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.point.cmp(&b.point))
    }

    pub fn compare_ext(&self, a: &ExtPrime, b: &ExtPrime) -> Result<Ordering> {
        for e in [a, b] {
            if let ExtPrime::Prime(p) = e {
                self.check(p)?;
            }
        }
        Ok(a.cmp(b))
    }

    pub fn is_zero(&self, p: &Prime) -> bool {
        *p == self.zero()
    }

    pub fn is_top(&self, p: &Prime) -> bool {
        *p == self.top()
    }

    /// The prime immediately below `p`, when `p` covers some prime.
    pub fn pred(&self, p: &Prime) -> Option<Prime> {
        match &p.point {
            Point::Index(0) | Point::Step(0) | Point::Top => None,
            Point::Index(i) => Some(self.make(Point::Index(i - 1))),
            Point::Step(n) => Some(self.make(Point::Step(n - 1))),
            Point::Lex { x, upper: true } => Some(self.make(Point::Lex {
                x: x.clone(),
                upper: false,
            })),
            Point::Lex { upper: false, .. } => None,
        }
    }

    /// The prime immediately above `p`, when it exists.
    pub fn succ(&self, p: &Prime) -> Option<Prime> {
        match (&self.inner.shape, &p.point) {
            (Shape::Chain { names, .. }, Point::Index(i)) => {
                (i + 1 < names.len()).then(|| self.make(Point::Index(i + 1)))
            }
            (_, Point::Step(n)) => Some(self.make(Point::Step(n + 1))),
            (_, Point::Lex { x, upper: false }) => Some(self.make(Point::Lex {
                x: x.clone(),
                upper: true,
            })),
            _ => None,
        }
    }

    pub fn name(&self, p: &Prime) -> String {
        match (&self.inner.shape, &p.point) {
            (Shape::Chain { names, .. }, Point::Index(i)) => names[*i].clone(),
            (_, Point::Step(0)) => "0".into(),
            (_, Point::Step(n)) => format!("q_{n}"),
            (_, Point::Top) => "m".into(),
            (_, Point::Lex { x, upper }) => {
                if !upper && x.is_zero() {
                    "0".into()
                } else if *upper && x.is_one() {
                    "m".into()
                } else {
                    format!("{}({})", if *upper { "q" } else { "p" }, fmt_rational(x))
                }
            }
            _ => "?".into(),
        }
    }

    pub fn ext_name(&self, e: &ExtPrime) -> String {
        match e {
            ExtPrime::NegInfinity => "-inf".into(),
            ExtPrime::Prime(p) => self.name(p),
            ExtPrime::RingTop => "R".into(),
        }
    }

    pub fn prime(&self, name: &str) -> Result<Prime> {
        let name = name.trim();
        let unknown = || Error::UnknownPrime(name.to_string());
        match &self.inner.shape {
            Shape::Chain { names, .. } => names
                .iter()
                .position(|n| n == name)
                .map(|i| self.make(Point::Index(i)))
                .ok_or_else(unknown),
            Shape::Omega { .. } => match name {
                "0" => Ok(self.make(Point::Step(0))),
                "m" => Ok(self.make(Point::Top)),
                _ => {
                    let digits = name
                        .strip_prefix("q_")
                        .or_else(|| name.strip_prefix('q'))
                        .ok_or_else(unknown)?;
                    let n: u64 = digits.parse().map_err(|_| unknown())?;
                    Ok(self.make(Point::Step(n)))
                }
            },
            Shape::Lex => match name {
                "0" => self.lex(Rational::zero(), false),
                "m" => self.lex(Rational::one(), true),
                _ => {
                    let (side, rest) = name.split_at(1);
                    let upper = match side {
                        "p" => false,
                        "q" => true,
                        _ => return Err(unknown()),
                    };
                    let inner = rest
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(unknown)?;
                    let x = parse_rational(inner).map_err(|_| unknown())?;
                    self.lex(x, upper)
                }
            },
        }
    }

    pub fn sup(&self, subset: &PrimeSubset) -> Result<Prime> {
        self.bound(subset, true)
    }

    pub fn inf(&self, subset: &PrimeSubset) -> Result<Prime> {
        self.bound(subset, false)
    }

    /// Whether the subset has a largest element (subsets without one have an
    /// idempotent supremum).
    pub fn has_maximum(&self, subset: &PrimeSubset) -> bool {
        !matches!(subset, PrimeSubset::OmegaTail { .. })
    }

    fn bound(&self, subset: &PrimeSubset, upper_bound: bool) -> Result<Prime> {
        let pick = |v: Vec<Prime>| -> Result<Prime> {
            for p in &v {
                self.check(p)?;
            }
            let best = if upper_bound {
                v.into_iter().max()
            } else {
                v.into_iter().min()
            };
            best.ok_or(Error::EmptySubset)
        };
        match subset {
            PrimeSubset::Finite(v) => pick(v.clone()),
            PrimeSubset::OmegaTail { from, extra } => {
                if self.kind() != SpectrumKind::OmegaPlusOne {
                    return Err(Error::NotDescribable(
                        "tails exist only on the ω+1 chain".into(),
                    ));
                }
                let mut v = extra.clone();
                v.push(if upper_bound {
                    self.top()
                } else {
                    self.step(*from)?
                });
                pick(v)
            }
            PrimeSubset::Lex {
                params,
                lower,
                upper,
                extra,
            } => {
                if self.kind() != SpectrumKind::LexDouble {
                    return Err(Error::NotDescribable(
                        "parameter sets exist only on the lexicographic double".into(),
                    ));
                }
                let mut v = extra.clone();
                if *lower || *upper {
                    let x = if upper_bound {
                        params.max()
                    } else {
                        params.min()
                    };
                    if let Some(x) = x {
                        let side = if upper_bound { *upper } else { !*lower };
                        v.push(self.lex(x, side)?);
                    }
                }
                pick(v)
            }
        }
    }
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::FiniteChain => "finite_chain",
            SpectrumKind::TwoPoint => "two_point",
            SpectrumKind::OmegaPlusOne => "omega_plus_one",
            SpectrumKind::LexDouble => "lex_double",
        })
    }
}
