//! JSON documents and textual literals.
//!
//! Every document is an object with an optional `schema_version` (currently
//! 1), a `spectrum`, and at most one of `system` or `filtration`. Schema
//! problems are reported with JSON-pointer paths.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::filtrations::{AboveRule, AdmissibleFiltration, Annotation, BelowRule};
use crate::fixtures::{Fixture, Verdicts};
use crate::ideals::{IdealPos, QSubmodule, RIdeal, SubmoduleForm, UniserialModule};
use crate::params::{fmt_rational, parse_rational, Geometric, ParamSet, Piece, Rational};
use crate::spectrum::{Spectrum, SpectrumKind};
use crate::systems::{AdmissibleSystem, Interval, Run};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub pointer: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", render(.issues))]
pub struct SchemaError {
    pub issues: Vec<Issue>,
}

fn render(issues: &[Issue]) -> String {
    let lines: Vec<String> = issues
        .iter()
        .map(|i| {
            format!(
                "{}: {}",
                if i.pointer.is_empty() {
                    "/"
                } else {
                    &i.pointer
                },
                i.message
            )
        })
        .collect();
    lines.join("\n")
}

#[derive(Clone, Debug)]
pub enum Document {
    Spectrum(Spectrum),
    System(AdmissibleSystem),
    Filtration {
        filtration: AdmissibleFiltration,
        verdicts: Option<Verdicts>,
    },
}

impl Document {
    pub fn spectrum(&self) -> &Spectrum {
        match self {
            Document::Spectrum(s) => s,
            Document::System(x) => x.spectrum(),
            Document::Filtration { filtration, .. } => filtration.spectrum(),
        }
    }
}

fn escape(segment: &str) -> String {
    segment.replace('~', "~0").replace('/', "~1")
}

/// Collects issues while walking a document.
#[derive(Default)]
struct Walker {
    issues: Vec<Issue>,
}

impl Walker {
    fn fail<T>(&mut self, pointer: &str, message: impl Into<String>) -> Option<T> {
        self.issues.push(Issue {
            pointer: pointer.to_string(),
            message: message.into(),
        });
        None
    }

    fn lift<T>(&mut self, pointer: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => self.fail(pointer, e.to_string()),
        }
    }

    fn object<'a>(&mut self, pointer: &str, v: &'a Value) -> Option<&'a Map<String, Value>> {
        match v.as_object() {
            Some(o) => Some(o),
            None => self.fail(pointer, "expected an object"),
        }
    }

    fn array<'a>(&mut self, pointer: &str, v: &'a Value) -> Option<&'a Vec<Value>> {
        match v.as_array() {
            Some(a) => Some(a),
            None => self.fail(pointer, "expected an array"),
        }
    }

    fn string<'a>(&mut self, pointer: &str, v: &'a Value) -> Option<&'a str> {
        match v.as_str() {
            Some(s) => Some(s),
            None => self.fail(pointer, "expected a string"),
        }
    }

    fn boolean(&mut self, pointer: &str, v: &Value) -> Option<bool> {
        match v.as_bool() {
            Some(b) => Some(b),
            None => self.fail(pointer, "expected a boolean"),
        }
    }

    fn rational(&mut self, pointer: &str, v: &Value) -> Option<Rational> {
        match v {
            Value::String(s) => self.lift(pointer, parse_rational(s)),
            Value::Number(n) if n.is_i64() => {
                Some(Rational::from_integer(n.as_i64().expect("checked").into()))
            }
            _ => self.fail(
                pointer,
                "expected a rational as a string like \"1/2\" or an integer",
            ),
        }
    }

    fn unknown_keys(&mut self, pointer: &str, o: &Map<String, Value>, allowed: &[&str]) {
        for key in o.keys() {
            if !allowed.contains(&key.as_str()) {
                self.fail::<()>(&format!("{pointer}/{}", escape(key)), "unexpected field");
            }
        }
    }

    fn required<'a>(
        &mut self,
        pointer: &str,
        o: &'a Map<String, Value>,
        key: &str,
    ) -> Option<&'a Value> {
        match o.get(key) {
            Some(v) => Some(v),
            None => self.fail(pointer, format!("missing field `{key}`")),
        }
    }

    fn spectrum(&mut self, ptr: &str, v: &Value) -> Option<Spectrum> {
        let o = self.object(ptr, v)?;
        let kind = self.required(ptr, o, "kind")?;
        let kind = self.string(&format!("{ptr}/kind"), kind)?;
        match kind {
            "finite_chain" => {
                self.unknown_keys(ptr, o, &["kind", "primes"]);
                let list_ptr = format!("{ptr}/primes");
                let list = self.required(ptr, o, "primes")?;
                let list = self.array(&list_ptr, list)?;
                let mut primes = Vec::new();
                for (i, entry) in list.iter().enumerate() {
                    let p = format!("{list_ptr}/{i}");
                    let Some(e) = self.object(&p, entry) else { continue };
                    self.unknown_keys(&p, e, &["name", "idempotent"]);
                    let name = self.required(&p, e, "name").and_then(|n| self.string(&format!("{p}/name"), n));
                    let idem = match e.get("idempotent") {
                        Some(b) => self.boolean(&format!("{p}/idempotent"), b),
                        None => Some(true),
                    };
                    if let (Some(n), Some(b)) = (name, idem) {
                        primes.push((n.to_string(), b));
                    }
                }
                if primes.len() != list.len() {
                    return None;
                }
                self.lift(&list_ptr, Spectrum::finite_chain(primes))
            }
            "two_point" => {
                self.unknown_keys(ptr, o, &["kind", "m_idempotent"]);
                let idem = match o.get("m_idempotent") {
                    Some(b) => self.boolean(&format!("{ptr}/m_idempotent"), b)?,
                    None => true,
                };
                Some(Spectrum::two_point(idem))
            }
            "omega_plus_one" => {
                self.unknown_keys(ptr, o, &["kind", "q_idempotent"]);
                let idem = match o.get("q_idempotent") {
                    Some(b) => self.boolean(&format!("{ptr}/q_idempotent"), b)?,
                    None => true,
                };
                Some(Spectrum::omega_plus_one(idem))
            }
            "lex_double" => {
                self.unknown_keys(ptr, o, &["kind"]);
                Some(Spectrum::lex_double())
            }
            other => self.fail(
                &format!("{ptr}/kind"),
                format!("unknown spectrum kind `{other}` (finite_chain, two_point, omega_plus_one, lex_double)"),
            ),
        }
    }

    fn piece(&mut self, ptr: &str, v: &Value) -> Option<Piece> {
        let o = self.object(ptr, v)?;
        if o.len() != 1 {
            return self.fail(
                ptr,
                "a piece has exactly one of `point`, `segment`, `geometric`",
            );
        }
        let (key, body) = o.iter().next().expect("one entry");
        let p = format!("{ptr}/{}", escape(key));
        match key.as_str() {
            "point" => self.rational(&p, body).map(Piece::Point),
            "segment" => {
                let ends = self.array(&p, body)?;
                if ends.len() != 2 {
                    return self.fail(&p, "a segment has two endpoints");
                }
                let a = self.rational(&format!("{p}/0"), &ends[0]);
                let b = self.rational(&format!("{p}/1"), &ends[1]);
                Some(Piece::Segment(a?, b?))
            }
            "geometric" => {
                let g = self.object(&p, body)?;
                self.unknown_keys(&p, g, &["limit", "start", "ratio"]);
                let field = |w: &mut Walker, name: &str| {
                    w.required(&p, g, name)
                        .and_then(|x| w.rational(&format!("{p}/{name}"), x))
                };
                let limit = field(self, "limit");
                let start = field(self, "start");
                let ratio = field(self, "ratio");
                let g = Geometric::new(limit?, start?, ratio?);
                self.lift(&p, g).map(Piece::Geo)
            }
            other => self.fail(&p, format!("unknown piece `{other}`")),
        }
    }

    fn system(&mut self, ptr: &str, spec: &Spectrum, v: &Value) -> Option<AdmissibleSystem> {
        let entries = self.array(ptr, v)?;
        let mut runs = Vec::new();
        let mut ok = true;
        for (i, entry) in entries.iter().enumerate() {
            let p = format!("{ptr}/{i}");
            match self.entry(&p, spec, entry) {
                Some(r) => runs.extend(r),
                None => ok = false,
            }
        }
        if !ok {
            return None;
        }
        self.lift(ptr, AdmissibleSystem::new(spec, runs))
    }

    fn entry(&mut self, p: &str, spec: &Spectrum, entry: &Value) -> Option<Vec<Run>> {
        match entry {
            Value::Array(pair) if pair.len() == 2 => {
                let lo = self.string(&format!("{p}/0"), &pair[0]);
                let hi = self.string(&format!("{p}/1"), &pair[1]);
                let chi = self.lift(p, Interval::named(spec, lo?, hi?))?;
                Some(vec![Run::Single(chi)])
            }
            Value::Object(o) => {
                self.unknown_keys(p, o, &["family", "params"]);
                let family = self
                    .required(p, o, "family")
                    .and_then(|f| self.string(&format!("{p}/family"), f));
                let params_ptr = format!("{p}/params");
                let list = self
                    .required(p, o, "params")
                    .and_then(|x| self.array(&params_ptr, x));
                let mut pieces = Vec::new();
                for (k, x) in list.into_iter().flatten().enumerate() {
                    pieces.push(self.piece(&format!("{params_ptr}/{k}"), x));
                }
                let pieces: Option<Vec<Piece>> = pieces.into_iter().collect();
                let set = self.lift(&params_ptr, ParamSet::new(pieces?))?;
                let wrap: fn(Piece) -> Run = match family? {
                    "full" => Run::Full,
                    "points" => Run::Points,
                    other => {
                        return self.fail(
                            &format!("{p}/family"),
                            format!("unknown family `{other}` (full, points)"),
                        )
                    }
                };
                Some(set.pieces().iter().cloned().map(wrap).collect())
            }
            _ => self.fail(p, "expected a pair of prime names or a family object"),
        }
    }

    fn filtration(
        &mut self,
        ptr: &str,
        spec: &Spectrum,
        v: &Value,
    ) -> Option<AdmissibleFiltration> {
        let o = self.object(ptr, v)?;
        self.unknown_keys(ptr, o, &["window", "systems", "below", "above"]);
        let window_ptr = format!("{ptr}/window");
        let window = self
            .required(ptr, o, "window")
            .and_then(|w| self.array(&window_ptr, w));
        let window = window.and_then(|w| match w.as_slice() {
            [a, b] => match (a.as_i64(), b.as_i64()) {
                (Some(a), Some(b)) if a <= b => Some((a, b)),
                _ => self.fail(&window_ptr, "expected two integers [a, b] with a ≤ b"),
            },
            _ => self.fail(&window_ptr, "expected two integers [a, b]"),
        });
        let below = match o.get("below") {
            None => Some(BelowRule::Empty),
            Some(b) => match self.string(&format!("{ptr}/below"), b) {
                Some("empty") => Some(BelowRule::Empty),
                Some("constant_first") => Some(BelowRule::ConstantFirst),
                Some(other) => self.fail(
                    &format!("{ptr}/below"),
                    format!("unknown rule `{other}` (empty, constant_first)"),
                ),
                None => None,
            },
        };
        let above = match o.get("above") {
            None => Some(AboveRule::ConstantLast),
            Some(b) => match self.string(&format!("{ptr}/above"), b) {
                Some("constant_last") => Some(AboveRule::ConstantLast),
                Some("ex1_tail") => Some(AboveRule::Ex1Tail),
                Some("ex2_tail") => Some(AboveRule::Ex2Tail),
                Some(other) => self.fail(
                    &format!("{ptr}/above"),
                    format!("unknown rule `{other}` (constant_last, ex1_tail, ex2_tail)"),
                ),
                None => None,
            },
        };
        let systems_ptr = format!("{ptr}/systems");
        let map = self
            .required(ptr, o, "systems")
            .and_then(|m| self.object(&systems_ptr, m));
        let (window, map) = (window?, map?);
        let mut systems = Vec::new();
        let mut ok = true;
        for key in map.keys() {
            let inside = key
                .parse::<i64>()
                .is_ok_and(|n| window.0 <= n && n <= window.1);
            if !inside {
                self.fail::<()>(
                    &format!("{systems_ptr}/{}", escape(key)),
                    "degree outside the window",
                );
                ok = false;
            }
        }
        for n in window.0..=window.1 {
            let key = n.to_string();
            let p = format!("{systems_ptr}/{key}");
            match map.get(&key) {
                None => {
                    self.fail::<()>(&systems_ptr, format!("missing degree {n}"));
                    ok = false;
                }
                Some(v) => match self.system(&p, spec, v) {
                    Some(x) => systems.push(x),
                    None => ok = false,
                },
            }
        }
        if !ok {
            return None;
        }
        self.lift(
            ptr,
            AdmissibleFiltration::new(spec, window.0, systems, below?, above?),
        )
    }

    fn verdicts(&mut self, ptr: &str, v: &Value) -> Option<Verdicts> {
        let o = self.object(ptr, v)?;
        self.unknown_keys(
            ptr,
            o,
            &[
                "nowhere_dense",
                "compactly_generated",
                "bounded",
                "right_nondegenerate",
                "co_intermediate",
                "left_nondegenerate",
                "epi_chain",
                "flat_chain",
            ],
        );
        let flag = |w: &mut Walker, key: &str| {
            o.get(key)
                .and_then(|b| w.boolean(&format!("{ptr}/{key}"), b))
        };
        let mut out = Verdicts {
            nowhere_dense: flag(self, "nowhere_dense"),
            compactly_generated: flag(self, "compactly_generated"),
            bounded: flag(self, "bounded"),
            right_nondegenerate: flag(self, "right_nondegenerate"),
            co_intermediate: flag(self, "co_intermediate"),
            flat_chain: flag(self, "flat_chain"),
            ..Verdicts::default()
        };
        if let Some(l) = o.get("left_nondegenerate") {
            let p = format!("{ptr}/left_nondegenerate");
            if let Some(lo) = self.object(&p, l) {
                let value = self
                    .required(&p, lo, "value")
                    .and_then(|b| self.boolean(&format!("{p}/value"), b));
                let source = self
                    .required(&p, lo, "source")
                    .and_then(|s| self.string(&format!("{p}/source"), s));
                if let (Some(value), Some(source)) = (value, source) {
                    out.left_nondegenerate = Some(Annotation {
                        value,
                        source: source.into(),
                    });
                }
            }
        }
        match o.get("epi_chain") {
            None => {}
            Some(Value::Null) => out.epi_chain = Some(None),
            Some(Value::String(s)) => out.epi_chain = Some(Some(s.clone())),
            Some(_) => {
                self.fail::<()>(&format!("{ptr}/epi_chain"), "expected a string or null");
            }
        }
        Some(out)
    }
}

pub fn parse_document(text: &str) -> std::result::Result<Document, SchemaError> {
    let value: Value = serde_json::from_str(text).map_err(|e| SchemaError {
        issues: vec![Issue {
            pointer: String::new(),
            message: format!("invalid JSON: {e}"),
        }],
    })?;
    let mut w = Walker::default();
    let doc = read_document(&mut w, &value);
    match doc {
        Some(d) if w.issues.is_empty() => Ok(d),
        _ => {
            if w.issues.is_empty() {
                w.issues.push(Issue {
                    pointer: String::new(),
                    message: "unreadable document".into(),
                });
            }
            Err(SchemaError { issues: w.issues })
        }
    }
}

fn read_document(w: &mut Walker, value: &Value) -> Option<Document> {
    let o = w.object("", value)?;
    w.unknown_keys(
        "",
        o,
        &[
            "schema_version",
            "name",
            "spectrum",
            "system",
            "filtration",
            "paper_verdicts",
        ],
    );
    if let Some(v) = o.get("schema_version") {
        if v.as_u64() != Some(SCHEMA_VERSION) {
            w.fail::<()>(
                "/schema_version",
                format!("unsupported schema version (expected {SCHEMA_VERSION})"),
            );
        }
    }
    if let Some(n) = o.get("name") {
        w.string("/name", n);
    }
    let spec = w
        .required("", o, "spectrum")
        .and_then(|s| w.spectrum("/spectrum", s))?;
    match (o.get("system"), o.get("filtration")) {
        (Some(_), Some(_)) => w.fail(
            "",
            "a document holds either `system` or `filtration`, not both",
        ),
        (Some(x), None) => w.system("/system", &spec, x).map(Document::System),
        (None, Some(f)) => {
            let filtration = w.filtration("/filtration", &spec, f);
            let verdicts = match o.get("paper_verdicts") {
                Some(v) => Some(w.verdicts("/paper_verdicts", v)?),
                None => None,
            };
            Some(Document::Filtration {
                filtration: filtration?,
                verdicts,
            })
        }
        (None, None) => Some(Document::Spectrum(spec)),
    }
}

pub fn spectrum_to_json(spec: &Spectrum) -> Value {
    match spec.kind() {
        SpectrumKind::FiniteChain => {
            let primes: Vec<Value> = spec
                .chain_primes()
                .unwrap_or_default()
                .into_iter()
                .map(|(name, idempotent)| json!({"name": name, "idempotent": idempotent}))
                .collect();
            json!({"kind": "finite_chain", "primes": primes})
        }
        SpectrumKind::TwoPoint => {
            json!({"kind": "two_point", "m_idempotent": spec.top().is_idempotent()})
        }
        SpectrumKind::OmegaPlusOne => {
            json!({"kind": "omega_plus_one", "q_idempotent": spec.steps_idempotent().unwrap_or(true)})
        }
        SpectrumKind::LexDouble => json!({"kind": "lex_double"}),
    }
}

fn piece_to_json(piece: &Piece) -> Value {
    match piece {
        Piece::Point(x) => json!({"point": fmt_rational(x)}),
        Piece::Segment(a, b) => json!({"segment": [fmt_rational(a), fmt_rational(b)]}),
        Piece::Geo(g) => json!({"geometric": {
            "limit": fmt_rational(g.limit()),
            "start": fmt_rational(g.start()),
            "ratio": fmt_rational(g.ratio()),
        }}),
    }
}

pub fn system_to_json(x: &AdmissibleSystem) -> Value {
    let spec = x.spectrum();
    let entries: Vec<Value> = x
        .runs()
        .iter()
        .map(|r| match r {
            Run::Single(i) => json!([spec.name(&i.lower), spec.name(&i.upper)]),
            Run::Full(p) => json!({"family": "full", "params": [piece_to_json(p)]}),
            Run::Points(p) => json!({"family": "points", "params": [piece_to_json(p)]}),
        })
        .collect();
    Value::Array(entries)
}

pub fn filtration_to_json(f: &AdmissibleFiltration) -> Value {
    let (a, _) = f.window();
    let mut systems = Map::new();
    for (k, x) in f.window_systems().iter().enumerate() {
        systems.insert((a + k as i64).to_string(), system_to_json(x));
    }
    let below = match f.below() {
        BelowRule::Empty => "empty",
        BelowRule::ConstantFirst => "constant_first",
    };
    let above = match f.above() {
        AboveRule::ConstantLast => "constant_last",
        AboveRule::Ex1Tail => "ex1_tail",
        AboveRule::Ex2Tail => "ex2_tail",
    };
    let (a, b) = f.window();
    json!({"window": [a, b], "systems": systems, "below": below, "above": above})
}

pub fn filtration_document(f: &AdmissibleFiltration) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "spectrum": spectrum_to_json(f.spectrum()),
        "filtration": filtration_to_json(f),
    })
}

pub fn system_document(x: &AdmissibleSystem) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "spectrum": spectrum_to_json(x.spectrum()),
        "system": system_to_json(x),
    })
}

pub fn fixture_document(fx: &Fixture) -> Value {
    let mut doc = filtration_document(&fx.filtration);
    let obj = doc.as_object_mut().expect("object");
    obj.insert("name".into(), json!(fx.name));
    obj.insert(
        "paper_verdicts".into(),
        serde_json::to_value(&fx.verdicts).expect("serialisable"),
    );
    doc
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

/// The position of a separator `/` outside parentheses.
fn top_level_slash(text: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn parse_token_fields(
    spec: &Spectrum,
    body: &str,
    text: &str,
) -> Result<(crate::spectrum::Prime, crate::spectrum::Prime, bool)> {
    let bad = || {
        Error::Parse(format!(
            "expected lo=<prime>,att=<prime>,isoloc=<bool> in `{text}`"
        ))
    };
    let mut lo = None;
    let mut att = None;
    let mut iso = None;
    for part in body.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(bad)?;
        match k.trim() {
            "lo" => lo = Some(spec.prime(v)?),
            "att" => att = Some(spec.prime(v)?),
            "isoloc" => iso = Some(v.trim().parse::<bool>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    let lo = lo.ok_or_else(bad)?;
    let hi = spec.succ(&lo).ok_or_else(|| {
        Error::InvalidIdeal(format!(
            "prime {} has no immediate successor",
            spec.name(&lo)
        ))
    })?;
    Ok((hi, att.ok_or_else(bad)?, iso.ok_or_else(bad)?))
}

/// `zero`, `prime:<p>` or `gen:lo=<p>,att=<p>,isoloc=<bool>`.
pub fn parse_ideal(spec: &Spectrum, text: &str) -> Result<IdealPos> {
    let t = text.trim();
    if t == "zero" || t == "0" {
        return IdealPos::prime(spec, &spec.zero());
    }
    if let Some(p) = t.strip_prefix("prime:") {
        return IdealPos::prime(spec, &spec.prime(p)?);
    }
    if let Some(body) = t.strip_prefix("gen:") {
        let (hi, att, iso) = parse_token_fields(spec, body, t)?;
        return IdealPos::generic(spec, &hi, &att, iso);
    }
    Err(Error::Parse(format!(
        "unrecognised ideal `{t}` (zero, prime:<p>, gen:lo=..,att=..,isoloc=..)"
    )))
}

/// An ideal literal or `R` for the ring itself.
pub fn parse_ring_ideal(spec: &Spectrum, text: &str) -> Result<RIdeal> {
    if text.trim() == "R" {
        return Ok(RIdeal::Whole);
    }
    parse_ideal(spec, text).map(RIdeal::Proper)
}

/// `Q`, `R`, `zero`, `loc:<p>`, an ideal literal, or
/// `frac:lo=<p>,att=<p>,isoloc=<bool>`.
pub fn parse_submodule(spec: &Spectrum, text: &str) -> Result<QSubmodule> {
    let t = text.trim();
    match t {
        "Q" => return Ok(QSubmodule::field(spec)),
        "R" => return Ok(QSubmodule::ring(spec)),
        "zero" | "0" => return Ok(QSubmodule::zero(spec)),
        _ => {}
    }
    if let Some(p) = t.strip_prefix("loc:") {
        return Ok(QSubmodule::loc(&spec.prime(p)?));
    }
    if let Some(body) = t.strip_prefix("frac:") {
        let (hi, attached, iso_loc) = parse_token_fields(spec, body, t)?;
        return QSubmodule::from_form(
            spec,
            &SubmoduleForm::Fractional {
                hi,
                attached,
                iso_loc,
            },
        );
    }
    parse_ideal(spec, t).map(|i| i.to_submodule())
}

/// `<numerator>/<denominator>`, e.g. `loc:q/prime:p`.
pub fn parse_module(spec: &Spectrum, text: &str) -> Result<UniserialModule> {
    let t = text.trim();
    let cut = top_level_slash(t)
        .ok_or_else(|| Error::Parse(format!("expected <numerator>/<denominator>, got `{t}`")))?;
    let num = parse_submodule(spec, &t[..cut])?;
    let den = parse_submodule(spec, &t[cut + 1..])?;
    UniserialModule::new(spec, num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::all_fixtures;

    #[test]
    fn fixtures_round_trip() {
        for fx in all_fixtures() {
            let text = to_pretty(&fixture_document(&fx));
            match parse_document(&text).unwrap() {
                Document::Filtration {
                    filtration,
                    verdicts,
                } => {
                    assert_eq!(
                        filtration_to_json(&filtration),
                        filtration_to_json(&fx.filtration)
                    );
                    assert_eq!(verdicts.unwrap(), fx.verdicts);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn pointers_name_the_bad_field() {
        let text = r#"{"spectrum":{"kind":"two_point"},"filtration":{"window":[0,1],
            "systems":{"0":[["0","x"]],"1":[["0","m"]],"7":[]}}}"#;
        let err = parse_document(text).unwrap_err();
        let pointers: Vec<&str> = err.issues.iter().map(|i| i.pointer.as_str()).collect();
        assert_eq!(
            pointers,
            ["/filtration/systems/7", "/filtration/systems/0/0"]
        );
    }

    #[test]
    fn module_literals() {
        let s = Spectrum::finite_chain(vec![
            ("0".into(), true),
            ("q".into(), true),
            ("m".into(), true),
        ])
        .unwrap();
        let m = parse_module(&s, "loc:q/prime:q").unwrap();
        assert_eq!(m, UniserialModule::residue_field(&s.prime("q").unwrap()));
        assert_eq!(parse_module(&s, &m.literal(&s)).unwrap(), m);
        for i in crate::ideals::ideal_vocabulary(&s) {
            assert_eq!(parse_ideal(&s, &i.literal(&s)).unwrap(), i);
        }
        let lex = Spectrum::lex_double();
        let k = parse_module(&lex, "loc:q(1/2)/prime:p(1/2)").unwrap();
        assert!(!k.is_zero());
    }
}
