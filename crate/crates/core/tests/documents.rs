use vclass_core::fixtures::{all_fixtures, lex_filtration};
use vclass_core::io::{
    filtration_document, parse_document, parse_ideal, parse_module, system_document, to_pretty,
    Document,
};
use vclass_core::params::{rat, ParamSet};
use vclass_core::spectrum::Spectrum;
use vclass_core::systems::all_systems;

fn pointers(text: &str) -> Vec<String> {
    parse_document(text)
        .unwrap_err()
        .issues
        .into_iter()
        .map(|i| i.pointer)
        .collect()
}

#[test]
fn every_system_of_a_small_chain_survives_serialisation() {
    let spec = Spectrum::finite_chain(vec![
        ("0".into(), true),
        ("q".into(), false),
        ("m".into(), true),
    ])
    .unwrap();
    for x in all_systems(&spec) {
        let text = to_pretty(&system_document(&x));
        match parse_document(&text).unwrap() {
            Document::System(back) => assert_eq!(back.literal(), x.literal()),
            other => panic!("expected a system, got {other:?}"),
        }
    }
}

#[test]
fn serialisation_is_byte_stable() {
    for fx in all_fixtures() {
        let first = to_pretty(&filtration_document(&fx.filtration));
        let Document::Filtration { filtration, .. } = parse_document(&first).unwrap() else {
            panic!()
        };
        assert_eq!(
            to_pretty(&filtration_document(&filtration)),
            first,
            "{}",
            fx.name
        );
    }
}

#[test]
fn corrupted_lexicographic_filtration_is_read_back() {
    let corrupted = lex_filtration(&ParamSet::segment(rat(0, 1), rat(1, 1)).unwrap()).unwrap();
    let text = to_pretty(&filtration_document(&corrupted));
    let Document::Filtration {
        filtration,
        verdicts,
    } = parse_document(&text).unwrap()
    else {
        panic!()
    };
    assert_eq!(filtration, corrupted);
    assert!(verdicts.is_none());
}

#[test]
fn schema_errors_carry_pointers() {
    assert_eq!(
        pointers(r#"{"spectrum":{"kind":"finite_chain","primes":[{"name":"0"},{"name":7}]}}"#),
        ["/spectrum/primes/1/name"]
    );
    assert_eq!(
        pointers(r#"{"schema_version":2,"spectrum":{"kind":"two_point"}}"#),
        ["/schema_version"]
    );
    assert_eq!(
        pointers(
            r#"{"spectrum":{"kind":"lex_double"},"system":[{"family":"full","params":[{"segment":["0","x"]}]}]}"#
        ),
        ["/system/0/params/0/segment/1"]
    );
    assert_eq!(
        pointers(
            r#"{"spectrum":{"kind":"two_point"},"filtration":{"window":[0,1],"systems":{"0":[]}}}"#
        ),
        ["/filtration/systems"]
    );
    assert_eq!(pointers("[1,2"), [""]);
}

#[test]
fn axiom_violations_parse_and_are_left_to_validation() {
    let text = r#"{"spectrum":{"kind":"two_point"},"system":[["0","m"],["m","m"]]}"#;
    let Document::System(x) = parse_document(text).unwrap() else {
        panic!()
    };
    let violations = x.validate();
    assert_eq!(violations.len(), 1);
    assert_eq!(
        violations[0].axiom,
        vclass_core::systems::Axiom::Disjointness
    );
}

#[test]
fn literals() {
    let spec = Spectrum::two_point(true);
    assert_eq!(
        parse_ideal(&spec, "prime:m").unwrap().literal(&spec),
        "prime:m"
    );
    assert!(parse_ideal(&spec, "prime:x").is_err());
    assert!(parse_ideal(&spec, "nonsense").is_err());
    assert_eq!(
        parse_module(&spec, "R/prime:m").unwrap().literal(&spec),
        "loc:m / prime:m"
    );
    assert!(parse_module(&spec, "prime:m/R").is_err());
    let omega = Spectrum::omega_plus_one(true);
    assert!(parse_module(&omega, "loc:q_3/prime:q_2").is_ok());
}
