mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use untwist::error::ParseErrorKind;
use untwist::transducer::Severity;
use untwist::{fixtures, parse_transducer, serialize_transducer, validate};

#[test]
fn fixtures_parse_and_validate() {
    for (name, text) in fixtures::ALL {
        let t = parse_transducer(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(t.name(), name);
        assert!(validate(&t).ok, "{name}: {}", validate(&t));
    }
}

#[test]
fn identity_fixture_shape() {
    let t = fixtures::load("T_ID");
    assert_eq!(t.num_states(), 2);
    assert_eq!(t.transitions().len(), 4);
    assert_eq!(t.h_max(), 3);
}

#[test]
fn canonical_form_round_trips() {
    for (name, text) in fixtures::ALL {
        let t = parse_transducer(text).unwrap();
        let s = serialize_transducer(&t);
        let back = parse_transducer(&s).unwrap_or_else(|e| panic!("{name}: {e}\n{s}"));
        assert_eq!(back, t, "{name}");
        assert_eq!(serialize_transducer(&back), s);
    }
}

fn parse_err(text: &str) -> (usize, ParseErrorKind) {
    let e = parse_transducer(text).expect_err("should not parse");
    (e.line, e.kind)
}

const HEAD: &str = "transducer X\ninput a\noutput a\nstates p q\ninitial p\nfinal q\n";

#[test]
fn rejects_malformed_files() {
    assert!(matches!(
        parse_err("input a\n").1,
        ParseErrorKind::Syntax(_)
    ));
    assert_eq!(
        parse_err(&format!("{HEAD}t p a R z \"\"\n")),
        (7, ParseErrorKind::UndeclaredState("z".into()))
    );
    assert_eq!(
        parse_err(&format!("{HEAD}t p b R q \"\"\n")),
        (7, ParseErrorKind::UndeclaredSymbol("b".into()))
    );
    assert_eq!(parse_err(&format!("{HEAD}t p a R q \"b\"\n")).0, 7);
    assert!(matches!(
        parse_err(&format!("{HEAD}t p a X q \"\"\n")).1,
        ParseErrorKind::Syntax(_)
    ));
    assert!(matches!(
        parse_err(&format!("{HEAD}t p |- L q \"\"\n")).1,
        ParseErrorKind::Delimiter(_)
    ));
    assert_eq!(
        parse_err(&format!("{HEAD}t p a R q \"\"\nt p a R q \"\"\n")),
        (8, ParseErrorKind::DuplicateTransition)
    );
    assert!(matches!(
        parse_err("transducer X\ninput a a\n").1,
        ParseErrorKind::DuplicateSymbol(_)
    ));
    assert!(matches!(
        parse_err("transducer X\ninput |-\n").1,
        ParseErrorKind::Delimiter(_)
    ));
    assert!(matches!(
        parse_err("transducer X\nstates p p\n").1,
        ParseErrorKind::DuplicateState(_)
    ));
    assert!(matches!(
        parse_err("transducer X\ninput a\nstates\n").1,
        ParseErrorKind::NoStates
    ));
    assert!(matches!(
        parse_err("transducer X\ninput a\nfrobnicate\n").1,
        ParseErrorKind::Syntax(_)
    ));
}

#[test]
fn too_many_states_is_invalid() {
    let states: Vec<String> = (0..65).map(|i| format!("s{i}")).collect();
    let text = format!(
        "transducer Big\ninput a\noutput a\nstates {}\ninitial s0\nfinal s1\nt s0 -| R s1 \"\"\n",
        states.join(" ")
    );
    assert!(matches!(parse_err(&text).1, ParseErrorKind::Invalid(_)));
}

#[test]
fn warnings_do_not_block_parsing() {
    let t = parse_transducer(&format!("{HEAD}t p a R q \"\"\n")).unwrap();
    let r = validate(&t);
    assert!(r.ok);
    assert!(r.issues.iter().any(|i| i.severity == Severity::Warning));
}

#[test]
fn input_words_parse_against_the_alphabet() {
    let t = fixtures::load("T_RUNNING");
    let u = t.parse_input("ab$c").unwrap();
    assert_eq!(t.render_input(&u), "ab$c");
    assert!(t.parse_input("abd").is_err());
    assert_eq!(t.parse_input("").unwrap(), Vec::<usize>::new());
}

proptest! {
    #[test]
    fn random_transducers_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = common::random_transducer(&mut rng, 3, 3, 8);
        let s = serialize_transducer(&t);
        let back = parse_transducer(&s).unwrap();
        prop_assert_eq!(back, t);
    }
}
