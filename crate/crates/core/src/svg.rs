//! Standalone SVG diagrams of filtrations: one horizontal lane per degree,
//! intervals as bars, gaps hatched, dense classes shaded.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::filtrations::AdmissibleFiltration;
use crate::params::{fmt_rational, Piece, Rational};
use crate::spectrum::{ExtPrime, Point, Prime, Spectrum, SpectrumKind};
use crate::systems::{AdmissibleSystem, Run};

const LABEL_WIDTH: f64 = 70.0;
const AXIS_WIDTH: f64 = 640.0;
const MARGIN: f64 = 20.0;
const HEADER: f64 = 40.0;
const LANE: f64 = 34.0;
const BAR: f64 = 12.0;
/// Geometric sequences are drawn up to this many terms, then their limit.
const TERMS: usize = 14;

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Horizontal position of a prime in `[0, 1]`.
fn position(spec: &Spectrum, p: &Prime) -> f64 {
    match p.point() {
        Point::Index(i) => {
            let len = spec.chain_primes().map_or(1, |c| c.len()).max(2);
            *i as f64 / (len - 1) as f64
        }
        Point::Step(n) => 0.9 * (1.0 - 0.5f64.powi((*n).min(60) as i32)),
        Point::Top => 1.0,
        Point::Lex { x, upper } => 0.02 + 0.96 * to_f64(x) + if *upper { 0.006 } else { 0.0 },
    }
}

fn ext_position(spec: &Spectrum, e: &ExtPrime) -> f64 {
    match e {
        ExtPrime::NegInfinity => -0.03,
        ExtPrime::Prime(p) => position(spec, p),
        ExtPrime::RingTop => 1.03,
    }
}

fn lex_position(x: &Rational, upper: bool) -> f64 {
    0.02 + 0.96 * to_f64(x) + if upper { 0.006 } else { 0.0 }
}

fn x_of(t: f64) -> f64 {
    MARGIN + LABEL_WIDTH + t * AXIS_WIDTH
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn rect(out: &mut String, from: f64, to: f64, y: f64, h: f64, style: &str, title: &str) {
    let (x0, x1) = (x_of(from.min(to)), x_of(from.max(to)));
    let w = (x1 - x0).max(2.0);
    let _ = writeln!(
        out,
        r#"  <rect x="{x0:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" {style}><title>{}</title></rect>"#,
        escape(title)
    );
}

/// Parameters at which a piece is drawn.
fn sample_parameters(piece: &Piece) -> Vec<Rational> {
    match piece {
        Piece::Point(x) => vec![x.clone()],
        Piece::Segment(a, b) => vec![a.clone(), b.clone()],
        Piece::Geo(g) => {
            let mut v: Vec<Rational> = (0..TERMS).map(|k| g.term(k)).collect();
            v.push(g.limit().clone());
            v
        }
    }
}

struct Lane<'a> {
    out: &'a mut String,
    spec: &'a Spectrum,
    y: f64,
}

impl Lane<'_> {
    fn gap(&mut self, from: f64, to: f64, title: &str) {
        rect(
            self.out,
            from,
            to,
            self.y - 2.0,
            BAR + 4.0,
            r#"fill="url(#hatch)" class="gap""#,
            title,
        );
    }

    fn dense(&mut self, from: f64, to: f64, title: &str) {
        rect(
            self.out,
            from,
            to,
            self.y - 4.0,
            BAR + 8.0,
            r##"fill="#9ecae1" fill-opacity="0.6" class="dense""##,
            title,
        );
    }

    fn bar(&mut self, from: f64, to: f64, title: &str) {
        rect(
            self.out,
            from,
            to,
            self.y,
            BAR,
            r##"fill="#31688e" class="interval""##,
            title,
        );
    }

    fn system(&mut self, x: &AdmissibleSystem) {
        let spec = self.spec.clone();
        let gaps = x.gaps();
        for g in &gaps.explicit {
            self.gap(
                ext_position(&spec, &g.below),
                ext_position(&spec, &g.above),
                &g.literal(&spec),
            );
        }
        for piece in &gaps.inside_points {
            match piece {
                Piece::Segment(a, b) => self.gap(
                    lex_position(a, false),
                    lex_position(b, true),
                    &format!("(p_x,q_x) : x ∈ {piece}"),
                ),
                _ => {
                    for t in sample_parameters(piece) {
                        let title = format!("(p_{0},q_{0})", fmt_rational(&t));
                        self.gap(lex_position(&t, false), lex_position(&t, true), &title);
                    }
                }
            }
        }
        for g in &gaps.between_terms {
            let terms: Vec<Rational> = (0..TERMS).map(|k| g.term(k)).collect();
            for pair in terms.windows(2) {
                let (s, t) = if pair[0] < pair[1] {
                    (&pair[0], &pair[1])
                } else {
                    (&pair[1], &pair[0])
                };
                let title = format!("(q_{},p_{})", fmt_rational(s), fmt_rational(t));
                self.gap(lex_position(s, true), lex_position(t, false), &title);
            }
        }
        for class in x.dense_classes() {
            self.dense(
                lex_position(&class.from, false),
                lex_position(&class.to, true),
                &class.literal(),
            );
        }
        for run in x.runs() {
            match run {
                Run::Single(i) => self.bar(
                    position(&spec, &i.lower),
                    position(&spec, &i.upper),
                    &i.literal(&spec),
                ),
                Run::Full(piece) => {
                    if let Piece::Segment(..) = piece {
                        continue; // drawn as a dense class
                    }
                    for t in sample_parameters(piece) {
                        let title = format!("[p_{0},q_{0}]", fmt_rational(&t));
                        self.bar(lex_position(&t, false), lex_position(&t, true), &title);
                    }
                }
                Run::Points(piece) => {
                    for t in sample_parameters(piece) {
                        let name = fmt_rational(&t);
                        self.bar(
                            lex_position(&t, false),
                            lex_position(&t, false),
                            &format!("[p_{name},p_{name}]"),
                        );
                        self.bar(
                            lex_position(&t, true),
                            lex_position(&t, true),
                            &format!("[q_{name},q_{name}]"),
                        );
                    }
                }
            }
        }
    }
}

/// Axis ticks: position and label.
fn ticks(spec: &Spectrum) -> Vec<(f64, String)> {
    match spec.kind() {
        SpectrumKind::FiniteChain | SpectrumKind::TwoPoint => spec
            .primes()
            .unwrap_or_default()
            .iter()
            .map(|p| (position(spec, p), spec.name(p)))
            .collect(),
        SpectrumKind::OmegaPlusOne => {
            let mut v: Vec<(f64, String)> = (0..5)
                .filter_map(|n| spec.step(n).ok())
                .map(|p| (position(spec, &p), spec.name(&p)))
                .collect();
            v.push((1.0, spec.name(&spec.top())));
            v
        }
        SpectrumKind::LexDouble => (0..=4)
            .map(|k| {
                let x = Rational::new(k.into(), 4.into());
                (lex_position(&x, false), format!("x={}", fmt_rational(&x)))
            })
            .collect(),
    }
}

/// Degrees shown: one below the window through two above it, so that tails
/// are visible.
pub fn lane_degrees(f: &AdmissibleFiltration) -> std::ops::RangeInclusive<i64> {
    let (a, b) = f.window();
    (a - 1)..=(b + 2)
}

/// Renders a filtration. The output depends only on the filtration.
pub fn render(f: &AdmissibleFiltration) -> String {
    let spec = f.spectrum();
    let degrees: Vec<i64> = lane_degrees(f).collect();
    let width = 2.0 * MARGIN + LABEL_WIDTH + AXIS_WIDTH + 20.0;
    let height = HEADER + LANE * degrees.len() as f64 + MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    out.push_str(concat!(
        "  <defs>\n",
        r##"    <pattern id="hatch" patternUnits="userSpaceOnUse" width="6" height="6" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" stroke="#c0392b" stroke-width="1.5"/></pattern>"##,
        "\n  </defs>\n"
    ));
    let _ = writeln!(
        out,
        r#"  <rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    );
    for (t, label) in ticks(spec) {
        let x = x_of(t);
        let _ = writeln!(
            out,
            r##"  <line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/>"##,
            HEADER - 6.0,
            height - MARGIN
        );
        let _ = writeln!(
            out,
            r#"  <text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            HEADER - 12.0,
            escape(&label)
        );
    }
    for (row, n) in degrees.iter().enumerate() {
        let y = HEADER + LANE * row as f64 + (LANE - BAR) / 2.0;
        let system = f.system_at(*n);
        let _ = writeln!(out, r#"  <g class="lane" data-degree="{n}">"#);
        let _ = writeln!(
            out,
            r#"  <text x="{MARGIN:.2}" y="{:.2}">n = {n}</text>"#,
            y + BAR - 2.0
        );
        let _ = writeln!(
            out,
            r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999999"/>"##,
            x_of(0.0),
            y + BAR / 2.0,
            x_of(1.0),
            y + BAR / 2.0
        );
        Lane {
            out: &mut out,
            spec,
            y,
        }
        .system(&system);
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{all_fixtures, fixture};

    #[test]
    fn deterministic_and_standalone() {
        for fx in all_fixtures() {
            let a = render(&fx.filtration);
            assert_eq!(a, render(&fx.filtration));
            assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
            assert!(!a.contains("href"), "{}", fx.name);
            let lanes = a.matches(r#"class="lane""#).count();
            assert_eq!(lanes, lane_degrees(&fx.filtration).count());
        }
    }

    #[test]
    fn ex0_shows_gaps_and_dense_class() {
        let svg = render(&fixture("ex0").unwrap().filtration);
        assert!(svg.contains(r#"class="gap""#));
        assert!(svg.contains(r#"class="dense""#));
        assert!(svg.contains(r#"class="interval""#));
    }
}
