//! The six reference filtrations with their expected verdicts.

use serde::Serialize;

use crate::error::Result;
use crate::filtrations::{
    AboveRule, AdmissibleFiltration, Annotation, BelowRule, ClassificationReport,
};
use crate::params::{rat, Geometric, ParamSet, Piece};
use crate::spectrum::Spectrum;
use crate::systems::AdmissibleSystem;

pub const NAMES: [&str; 6] = ["ex0", "ex1", "ex2", "ex3", "hrs", "stable_constant"];

/// Expected verdicts. `None` means the fixture makes no claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nowhere_dense: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compactly_generated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounded: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_nondegenerate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub co_intermediate: Option<bool>,
    /// Never computed; carried with its source.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_nondegenerate: Option<Annotation>,
    /// A piece of the rendered chain that must appear, or `None` when no
    /// chain exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epi_chain: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat_chain: Option<bool>,
}

impl Verdicts {
    /// Claims contradicted by a computed report, as `field: expected vs computed`.
    pub fn mismatches(&self, report: &ClassificationReport) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |name: &str, expected: Option<bool>, got: bool| {
            if let Some(e) = expected {
                if e != got {
                    out.push(format!("{name}: expected {e}, computed {got}"));
                }
            }
        };
        check("nowhere_dense", self.nowhere_dense, report.nowhere_dense);
        check(
            "compactly_generated",
            self.compactly_generated,
            report.compactly_generated,
        );
        check("bounded", self.bounded, report.bounded);
        check(
            "right_nondegenerate",
            self.right_nondegenerate,
            report.right_nondegenerate,
        );
        check(
            "co_intermediate",
            self.co_intermediate,
            report.co_intermediate,
        );
        if let Some(flat) = self.flat_chain {
            check(
                "flat_chain",
                Some(flat),
                report.epi_chain.as_ref().is_some_and(|c| c.flat),
            );
        }
        match (&self.epi_chain, &report.epi_chain) {
            (Some(None), Some(c)) => {
                out.push(format!("epi_chain: expected none, computed {}", c.display))
            }
            (Some(Some(want)), None) => {
                out.push(format!("epi_chain: expected `{want}`, computed none"))
            }
            (Some(Some(want)), Some(c)) if !c.display.contains(want.as_str()) => {
                out.push(format!("epi_chain: expected `{want}` inside {}", c.display))
            }
            _ => {}
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub filtration: AdmissibleFiltration,
    pub verdicts: Verdicts,
}

fn annotation(value: bool, source: &str) -> Option<Annotation> {
    Some(Annotation {
        value,
        source: source.into(),
    })
}

/// `{0} ∪ {2^{-k} : k ≥ 0}`: closed and nowhere dense in `[0,1]`.
pub fn dyadic_sequence() -> ParamSet {
    let g = Geometric::new(rat(0, 1), rat(1, 1), rat(1, 2)).expect("valid sequence");
    ParamSet::new(vec![Piece::Geo(g)]).expect("single piece")
}

/// The lexicographic filtration with point pairs over `z` in degree 0, the
/// full family in degree 1 and `{[0,m]}` from degree 2.
pub fn lex_filtration(z: &ParamSet) -> Result<AdmissibleFiltration> {
    let s = Spectrum::lex_double();
    let full = ParamSet::segment(rat(0, 1), rat(1, 1))?;
    AdmissibleFiltration::new(
        &s,
        0,
        vec![
            AdmissibleSystem::point_pairs(&s, z)?,
            AdmissibleSystem::full_lex(&s, &full)?,
            AdmissibleSystem::named(&s, &[("0", "m")])?,
        ],
        BelowRule::Empty,
        AboveRule::ConstantLast,
    )
}

pub fn fixture(name: &str) -> Option<Fixture> {
    let built = match name {
        "ex0" => lex_filtration(&dyadic_sequence()).map(|f| Fixture {
            name: "ex0",
            filtration: f,
            verdicts: Verdicts {
                nowhere_dense: Some(false),
                bounded: Some(true),
                co_intermediate: Some(true),
                left_nondegenerate: annotation(true, "derived"),
                epi_chain: Some(None),
                ..Verdicts::default()
            },
        }),
        "ex1" | "ex2" => {
            let s = Spectrum::omega_plus_one(true);
            let rule = if name == "ex1" {
                AboveRule::Ex1Tail
            } else {
                AboveRule::Ex2Tail
            };
            AdmissibleFiltration::new(
                &s,
                -1,
                vec![AdmissibleSystem::empty(&s)],
                BelowRule::Empty,
                rule,
            )
            .map(|f| {
                let verdicts = if name == "ex1" {
                    Verdicts {
                        nowhere_dense: Some(true),
                        compactly_generated: Some(false),
                        bounded: Some(false),
                        right_nondegenerate: Some(true),
                        left_nondegenerate: annotation(true, "paper"),
                        epi_chain: Some(Some("0 ← Q × R/m ← R_{q_1} × R/m ← R_{q_2} × R/m".into())),
                        flat_chain: Some(false),
                        ..Verdicts::default()
                    }
                } else {
                    Verdicts {
                        nowhere_dense: Some(true),
                        compactly_generated: Some(true),
                        left_nondegenerate: annotation(false, "paper"),
                        epi_chain: Some(Some("0 ← Q ← R_{q_1} ← R_{q_2}".into())),
                        flat_chain: Some(true),
                        ..Verdicts::default()
                    }
                };
                Fixture {
                    name: if name == "ex1" { "ex1" } else { "ex2" },
                    filtration: f,
                    verdicts,
                }
            })
        }
        "ex3" => {
            let s = Spectrum::two_point(true);
            AdmissibleSystem::named(&s, &[("0", "0"), ("m", "m")])
                .and_then(|x| {
                    AdmissibleFiltration::new(
                        &s,
                        0,
                        vec![x],
                        BelowRule::Empty,
                        AboveRule::ConstantLast,
                    )
                })
                .map(|f| Fixture {
                    name: "ex3",
                    filtration: f,
                    verdicts: Verdicts {
                        nowhere_dense: Some(true),
                        compactly_generated: Some(false),
                        bounded: Some(false),
                        right_nondegenerate: Some(true),
                        left_nondegenerate: annotation(false, "paper"),
                        epi_chain: Some(Some("0 ← Q × R/m ← Q × R/m ← Q × R/m".into())),
                        ..Verdicts::default()
                    },
                })
        }
        "hrs" => {
            let s = Spectrum::finite_chain(vec![
                ("0".into(), true),
                ("q".into(), true),
                ("m".into(), true),
            ])
            .expect("valid chain");
            AdmissibleSystem::named(&s, &[("0", "m")])
                .and_then(|x| {
                    AdmissibleFiltration::new(
                        &s,
                        0,
                        vec![x],
                        BelowRule::Empty,
                        AboveRule::ConstantLast,
                    )
                })
                .map(|f| Fixture {
                    name: "hrs",
                    filtration: f,
                    verdicts: Verdicts {
                        compactly_generated: Some(true),
                        bounded: Some(true),
                        left_nondegenerate: annotation(true, "derived"),
                        ..Verdicts::default()
                    },
                })
        }
        "stable_constant" => {
            let s = Spectrum::two_point(true);
            AdmissibleSystem::named(&s, &[("0", "0"), ("m", "m")]).map(|x| Fixture {
                name: "stable_constant",
                filtration: AdmissibleFiltration::constant(x),
                verdicts: Verdicts {
                    nowhere_dense: Some(true),
                    compactly_generated: Some(false),
                    bounded: Some(false),
                    right_nondegenerate: Some(false),
                    left_nondegenerate: annotation(false, "derived"),
                    ..Verdicts::default()
                },
            })
        }
        _ => return None,
    };
    Some(built.expect("fixtures are well-formed"))
}

pub fn all_fixtures() -> Vec<Fixture> {
    NAMES
        .iter()
        .map(|n| fixture(n).expect("known fixture"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_is_valid_and_matches() {
        for fx in all_fixtures() {
            assert_eq!(fx.filtration.validate().unwrap(), [], "{}", fx.name);
            let report = fx.filtration.classify().unwrap();
            assert_eq!(
                fx.verdicts.mismatches(&report),
                Vec::<String>::new(),
                "{}",
                fx.name
            );
        }
    }
}
