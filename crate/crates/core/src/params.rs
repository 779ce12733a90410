//! Describable parameter sets on the rational line.
//!
//! A [`ParamSet`] is a finite union of points, closed segments and
//! geometric sequences together with their limit. Every such set is closed,
//! so suprema and infima are attained. After normalisation the pieces have
//! pairwise disjoint hulls and are sorted, which keeps all order questions
//! (covering pairs, density, coverage) decidable by finite case analysis.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: `{text}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Endpoint of a [`Range`]; `closed` says whether the value itself belongs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub value: Rational,
    pub closed: bool,
}

/// A possibly unbounded interval of the rational line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: Option<Endpoint>,
    pub hi: Option<Endpoint>,
}

impl Range {
    pub fn all() -> Self {
        Range { lo: None, hi: None }
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        Range {
            lo: Some(Endpoint {
                value: a,
                closed: true,
            }),
            hi: Some(Endpoint {
                value: b,
                closed: true,
            }),
        }
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        Range {
            lo: Some(Endpoint {
                value: a,
                closed: false,
            }),
            hi: Some(Endpoint {
                value: b,
                closed: false,
            }),
        }
    }

    pub fn point(a: Rational) -> Self {
        Range::closed(a.clone(), a)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = match &self.lo {
            None => true,
            Some(e) => x > &e.value || (e.closed && x == &e.value),
        };
        let hi_ok = match &self.hi {
            None => true,
            Some(e) => x < &e.value || (e.closed && x == &e.value),
        };
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => match l.value.cmp(&h.value) {
                Ordering::Greater => true,
                Ordering::Equal => !(l.closed && h.closed),
                Ordering::Less => false,
            },
            _ => false,
        }
    }

    /// A single point or nothing.
    pub fn is_degenerate(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => l.value >= h.value,
            _ => false,
        }
    }

    pub fn intersect(&self, other: &Range) -> Range {
        let lo = match (&self.lo, &other.lo) {
            (None, x) | (x, None) => x.clone(),
            (Some(a), Some(b)) => Some(match a.value.cmp(&b.value) {
                Ordering::Greater => a.clone(),
                Ordering::Less => b.clone(),
                Ordering::Equal => Endpoint {
                    value: a.value.clone(),
                    closed: a.closed && b.closed,
                },
            }),
        };
        let hi = match (&self.hi, &other.hi) {
            (None, x) | (x, None) => x.clone(),
            (Some(a), Some(b)) => Some(match a.value.cmp(&b.value) {
                Ordering::Less => a.clone(),
                Ordering::Greater => b.clone(),
                Ordering::Equal => Endpoint {
                    value: a.value.clone(),
                    closed: a.closed && b.closed,
                },
            }),
        };
        Range { lo, hi }
    }

    /// `self ∖ other` as at most two ranges.
    pub fn subtract(&self, other: &Range) -> Vec<Range> {
        let mut out = Vec::new();
        if let Some(l) = &other.lo {
            let left = Range {
                lo: None,
                hi: Some(Endpoint {
                    value: l.value.clone(),
                    closed: !l.closed,
                }),
            };
            let part = self.intersect(&left);
            if !part.is_empty() {
                out.push(part);
            }
        }
        if let Some(h) = &other.hi {
            let right = Range {
                lo: Some(Endpoint {
                    value: h.value.clone(),
                    closed: !h.closed,
                }),
                hi: None,
            };
            let part = self.intersect(&right);
            if !part.is_empty() {
                out.push(part);
            }
        }
        out
    }

    /// Some element of a non-empty range, preferring the middle.
    pub fn sample(&self) -> Option<Rational> {
        if self.is_empty() {
            return None;
        }
        let one = Rational::one();
        Some(match (&self.lo, &self.hi) {
            (None, None) => Rational::zero(),
            (Some(l), None) => &l.value + one,
            (None, Some(h)) => &h.value - one,
            (Some(l), Some(h)) if l.value == h.value => l.value.clone(),
            (Some(l), Some(h)) => (&l.value + &h.value) / rat(2, 1),
        })
    }

    /// Several distinct interior points of a nondegenerate bounded range.
    pub fn interior_samples(&self) -> Vec<Rational> {
        let (Some(l), Some(h)) = (&self.lo, &self.hi) else {
            return self.sample().into_iter().collect();
        };
        if l.value >= h.value {
            return self.sample().into_iter().collect();
        }
        let width = &h.value - &l.value;
        [
            (1, 2),
            (1, 3),
            (2, 3),
            (2, 7),
            (5, 11),
            (7, 13),
            (3, 17),
            (11, 19),
        ]
        .iter()
        .map(|&(n, d)| &l.value + &width * rat(n, d))
        .collect()
    }
}

/// `{limit + (start - limit)·ratio^n : n ≥ 0} ∪ {limit}` with `0 < ratio < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Geometric {
    limit: Rational,
    start: Rational,
    ratio: Rational,
}

/// How many terms of a geometric sequence fall into a range.
pub enum TermsIn {
    Infinite,
    Finite(Vec<Rational>),
}

impl Geometric {
    pub fn new(limit: Rational, start: Rational, ratio: Rational) -> Result<Self> {
        if !(ratio > Rational::zero() && ratio < Rational::one()) {
            return Err(Error::NotDescribable(format!(
                "geometric ratio {} must lie strictly between 0 and 1",
                fmt_rational(&ratio)
            )));
        }
        if start == limit {
            return Err(Error::NotDescribable(
                "geometric start equals its limit".into(),
            ));
        }
        Ok(Geometric {
            limit,
            start,
            ratio,
        })
    }

    pub fn limit(&self) -> &Rational {
        &self.limit
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    pub fn decreasing(&self) -> bool {
        self.start > self.limit
    }

    pub fn term(&self, n: usize) -> Rational {
        let mut offset = &self.start - &self.limit;
        for _ in 0..n {
            offset *= &self.ratio;
        }
        &self.limit + offset
    }

    pub fn min(&self) -> Rational {
        if self.decreasing() {
            self.limit.clone()
        } else {
            self.start.clone()
        }
    }

    pub fn max(&self) -> Rational {
        if self.decreasing() {
            self.start.clone()
        } else {
            self.limit.clone()
        }
    }

    pub fn hull(&self) -> Range {
        Range::closed(self.min(), self.max())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if x == &self.limit {
            return true;
        }
        let target = x - &self.limit;
        let mut offset = &self.start - &self.limit;
        if target.is_positive() != offset.is_positive() {
            return false;
        }
        while offset.abs() > target.abs() {
            offset *= &self.ratio;
        }
        offset == target
    }

    /// Index of the first term strictly closer than `eps` to the limit.
    pub fn settle_index(&self, eps: &Rational) -> usize {
        let mut offset = (&self.start - &self.limit).abs();
        let mut n = 0;
        while &offset >= eps {
            offset *= &self.ratio;
            n += 1;
        }
        n
    }

    /// Terms (not the limit) lying in `range`.
    pub fn terms_in(&self, range: &Range) -> TermsIn {
        let from_above = self.decreasing();
        // Does the range contain a one-sided neighbourhood of the limit on the
        // side the terms approach from?
        let approach = if from_above {
            let lo_ok = match &range.lo {
                None => true,
                Some(e) => e.value <= self.limit,
            };
            let hi_ok = match &range.hi {
                None => true,
                Some(e) => e.value > self.limit,
            };
            lo_ok && hi_ok
        } else {
            let hi_ok = match &range.hi {
                None => true,
                Some(e) => e.value >= self.limit,
            };
            let lo_ok = match &range.lo {
                None => true,
                Some(e) => e.value < self.limit,
            };
            lo_ok && hi_ok
        };
        if approach {
            return TermsIn::Infinite;
        }
        // Only finitely many terms can be in the range: the ones at distance at
        // least the gap between the limit and the range.
        let gap = [&range.lo, &range.hi]
            .into_iter()
            .flatten()
            .map(|e| (&e.value - &self.limit).abs())
            .filter(|d| !d.is_zero())
            .min();
        let count = match gap {
            Some(g) => self.settle_index(&g) + 1,
            None => 0,
        };
        TermsIn::Finite(
            (0..count)
                .map(|n| self.term(n))
                .filter(|t| range.contains(t))
                .collect(),
        )
    }

    /// Whether every element of `self` is an element of `other`.
    pub fn subset_of(&self, other: &Geometric) -> bool {
        self.limit == other.limit && other.contains(&self.term(0)) && other.contains(&self.term(1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Point(Rational),
    Segment(Rational, Rational),
    Geo(Geometric),
}

impl Piece {
    pub fn min(&self) -> Rational {
        match self {
            Piece::Point(x) => x.clone(),
            Piece::Segment(a, _) => a.clone(),
            Piece::Geo(g) => g.min(),
        }
    }

    pub fn max(&self) -> Rational {
        match self {
            Piece::Point(x) => x.clone(),
            Piece::Segment(_, b) => b.clone(),
            Piece::Geo(g) => g.max(),
        }
    }

    pub fn hull(&self) -> Range {
        Range::closed(self.min(), self.max())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Piece::Point(p) => p == x,
            Piece::Segment(a, b) => a <= x && x <= b,
            Piece::Geo(g) => g.contains(x),
        }
    }

    pub fn is_segment(&self) -> bool {
        matches!(self, Piece::Segment(..))
    }

    /// Whether the piece has an element inside `range`.
    pub fn meets(&self, range: &Range) -> bool {
        match self {
            Piece::Point(x) => range.contains(x),
            Piece::Segment(..) => !self.hull().intersect(range).is_empty(),
            Piece::Geo(g) => {
                range.contains(g.limit())
                    || match g.terms_in(range) {
                        TermsIn::Infinite => true,
                        TermsIn::Finite(v) => !v.is_empty(),
                    }
            }
        }
    }

    /// Whether every element of the piece lies in the union of `ranges` and
    /// `pieces`.
    pub fn covered_by(&self, ranges: &[Range], pieces: &[Piece]) -> bool {
        let mut all_ranges: Vec<Range> = ranges.to_vec();
        all_ranges.extend(pieces.iter().filter(|p| p.is_segment()).map(Piece::hull));
        let point_covered = |x: &Rational| {
            all_ranges.iter().any(|r| r.contains(x)) || pieces.iter().any(|p| p.contains(x))
        };
        match self {
            Piece::Point(x) => point_covered(x),
            Piece::Segment(a, b) => {
                let mut rest = vec![Range::closed(a.clone(), b.clone())];
                for r in &all_ranges {
                    rest = rest.iter().flat_map(|part| part.subtract(r)).collect();
                }
                rest.iter().all(|part| {
                    part.is_degenerate() && part.sample().is_some_and(|x| point_covered(&x))
                })
            }
            Piece::Geo(g) => {
                if !point_covered(g.limit()) {
                    return false;
                }
                let by_geo = pieces
                    .iter()
                    .any(|p| matches!(p, Piece::Geo(h) if g.subset_of(h)));
                if by_geo {
                    return true;
                }
                // A range swallowing the tail; the finitely many earlier terms
                // are checked one by one.
                for r in &all_ranges {
                    if let TermsIn::Infinite = g.terms_in(r) {
                        let mut n = 0;
                        while !r.contains(&g.term(n)) {
                            n += 1;
                        }
                        return (0..n).all(|i| point_covered(&g.term(i)));
                    }
                }
                false
            }
        }
    }

    /// One element of the piece in each cell of the partition of the line cut
    /// out by `cuts` (points and the open gaps between them).
    pub fn cell_representatives(&self, cuts: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::new();
        for cell in cells(cuts) {
            if let Some(x) = self.representative_in(&cell) {
                out.push(x);
            }
        }
        out
    }

    pub fn representative_in(&self, cell: &Range) -> Option<Rational> {
        match self {
            Piece::Point(x) => cell.contains(x).then(|| x.clone()),
            Piece::Segment(..) => self.hull().intersect(cell).sample(),
            Piece::Geo(g) => {
                if cell.contains(g.limit()) {
                    return Some(g.limit().clone());
                }
                match g.terms_in(cell) {
                    TermsIn::Infinite => {
                        let mut n = 0;
                        while !cell.contains(&g.term(n)) {
                            n += 1;
                        }
                        Some(g.term(n))
                    }
                    TermsIn::Finite(v) => v.into_iter().next(),
                }
            }
        }
    }
}

/// Largest or smallest element of a piece inside a range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extreme {
    Empty,
    At(Rational),
    /// Elements exist but the bound is not attained.
    Unattained,
}

impl Piece {
    /// The largest element of the piece inside `range`.
    pub fn max_in(&self, range: &Range) -> Extreme {
        self.extreme_in(range, true)
    }

    /// The smallest element of the piece inside `range`.
    pub fn min_in(&self, range: &Range) -> Extreme {
        self.extreme_in(range, false)
    }

    fn extreme_in(&self, range: &Range, largest: bool) -> Extreme {
        match self {
            Piece::Point(x) => {
                if range.contains(x) {
                    Extreme::At(x.clone())
                } else {
                    Extreme::Empty
                }
            }
            Piece::Segment(..) => {
                let part = self.hull().intersect(range);
                if part.is_empty() {
                    return Extreme::Empty;
                }
                let end = if largest { &part.hi } else { &part.lo };
                match end {
                    Some(e) if e.closed => Extreme::At(e.value.clone()),
                    _ => Extreme::Unattained,
                }
            }
            Piece::Geo(g) => {
                let limit_in = range.contains(g.limit());
                // Terms sit above the limit when the sequence decreases; the
                // extreme on the far side of the limit is a genuine term.
                let terms_far_side = g.decreasing() == largest;
                match g.terms_in(range) {
                    TermsIn::Infinite => {
                        if terms_far_side {
                            let mut n = 0;
                            while !range.contains(&g.term(n)) {
                                n += 1;
                            }
                            Extreme::At(g.term(n))
                        } else if limit_in {
                            Extreme::At(g.limit().clone())
                        } else {
                            Extreme::Unattained
                        }
                    }
                    TermsIn::Finite(mut v) => {
                        if limit_in {
                            v.push(g.limit().clone());
                        }
                        let best = if largest {
                            v.into_iter().max()
                        } else {
                            v.into_iter().min()
                        };
                        best.map_or(Extreme::Empty, Extreme::At)
                    }
                }
            }
        }
    }
}

/// The partition of the line into the points of `cuts` and the open ranges
/// between consecutive cut points.
pub fn cells(cuts: &[Rational]) -> Vec<Range> {
    let mut pts: Vec<Rational> = cuts.to_vec();
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    let mut prev: Option<Rational> = None;
    for p in &pts {
        out.push(Range {
            lo: prev.clone().map(|v| Endpoint {
                value: v,
                closed: false,
            }),
            hi: Some(Endpoint {
                value: p.clone(),
                closed: false,
            }),
        });
        out.push(Range::point(p.clone()));
        prev = Some(p.clone());
    }
    out.push(Range {
        lo: prev.map(|v| Endpoint {
            value: v,
            closed: false,
        }),
        hi: None,
    });
    out
}

/// A normalised finite union of pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamSet {
    pieces: Vec<Piece>,
}

impl ParamSet {
    pub fn empty() -> Self {
        ParamSet::default()
    }

    pub fn segment(a: Rational, b: Rational) -> Result<Self> {
        ParamSet::new(vec![Piece::Segment(a, b)])
    }

    pub fn new(raw: Vec<Piece>) -> Result<Self> {
        let mut points = Vec::new();
        let mut segments = Vec::new();
        let mut geos: Vec<Geometric> = Vec::new();
        for piece in raw {
            match piece {
                Piece::Point(x) => points.push(x),
                Piece::Segment(a, b) => match a.cmp(&b) {
                    Ordering::Less => segments.push((a, b)),
                    Ordering::Equal => points.push(a),
                    Ordering::Greater => {
                        return Err(Error::NotDescribable(format!(
                            "segment [{}, {}] is reversed",
                            fmt_rational(&a),
                            fmt_rational(&b)
                        )))
                    }
                },
                Piece::Geo(g) => {
                    if !geos.contains(&g) {
                        geos.push(g)
                    }
                }
            }
        }
        segments.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (a, b) in segments {
            match merged.last_mut() {
                Some((_, hi)) if a <= *hi => {
                    if b > *hi {
                        *hi = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        let in_segment = |x: &Rational| merged.iter().any(|(a, b)| a <= x && x <= b);
        geos.retain(|g| !merged.iter().any(|(a, b)| a <= &g.min() && &g.max() <= b));
        for g in &geos {
            if merged.iter().any(|(a, b)| {
                !g.hull()
                    .intersect(&Range::closed(a.clone(), b.clone()))
                    .is_empty()
            }) {
                return Err(Error::NotDescribable(
                    "a geometric sequence partially overlaps a segment".into(),
                ));
            }
        }
        for (i, g) in geos.iter().enumerate() {
            for h in &geos[i + 1..] {
                if !g.hull().intersect(&h.hull()).is_empty() {
                    return Err(Error::NotDescribable(
                        "two geometric sequences have overlapping hulls".into(),
                    ));
                }
            }
        }
        points.sort();
        points.dedup();
        let mut pieces: Vec<Piece> = Vec::new();
        for x in points {
            if in_segment(&x) || geos.iter().any(|g| g.contains(&x)) {
                continue;
            }
            if geos.iter().any(|g| g.hull().contains(&x)) {
                return Err(Error::NotDescribable(format!(
                    "point {} lies between the terms of a geometric sequence",
                    fmt_rational(&x)
                )));
            }
            pieces.push(Piece::Point(x));
        }
        pieces.extend(merged.into_iter().map(|(a, b)| Piece::Segment(a, b)));
        pieces.extend(geos.into_iter().map(Piece::Geo));
        pieces.sort_by_key(|a| a.min());
        Ok(ParamSet { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn min(&self) -> Option<Rational> {
        self.pieces.first().map(Piece::min)
    }

    pub fn max(&self) -> Option<Rational> {
        self.pieces.last().map(Piece::max)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_finite(&self) -> bool {
        self.pieces.iter().all(|p| matches!(p, Piece::Point(_)))
    }

    /// A nondegenerate open range inside `window` contained in the set, if any.
    pub fn interior_within(&self, window: &Range) -> Option<Range> {
        self.pieces.iter().find_map(|p| match p {
            Piece::Segment(a, b) => {
                let r = Range::open(a.clone(), b.clone()).intersect(window);
                (!r.is_empty() && !r.is_degenerate()).then_some(r)
            }
            _ => None,
        })
    }

    /// Every endpoint, start and limit of the pieces.
    pub fn landmarks(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for p in &self.pieces {
            out.push(p.min());
            out.push(p.max());
        }
        out
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Point(x) => write!(f, "{{{}}}", fmt_rational(x)),
            Piece::Segment(a, b) => write!(f, "[{},{}]", fmt_rational(a), fmt_rational(b)),
            Piece::Geo(g) => write!(
                f,
                "geo(start={},ratio={},limit={})",
                fmt_rational(&g.start),
                fmt_rational(&g.ratio),
                fmt_rational(&g.limit)
            ),
        }
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}
