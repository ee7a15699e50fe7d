use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use untwist::{
    decide_oneway_bounded, decide_sweeping_bounded, fixtures, parse_transducer,
    serialize_transducer, verify_certificate, DecideOptions, PassBound, PeriodBound, Transducer,
    VerdictKind,
};

fn refutation(t: &Transducer, verdict: &untwist::Verdict) -> (String, usize, String) {
    assert_eq!(verdict.kind, VerdictKind::Refuted);
    let c = verdict.certificate.as_ref().unwrap();
    assert!(verify_certificate(t, &c.text), "{}", c.text);
    (c.input_text.clone(), c.run_index, c.text.clone())
}

#[test]
fn copy_is_refuted_at_the_shortest_witness() {
    let t = fixtures::load("T_COPY_AB");
    let clean = decide_oneway_bounded(&t, &DecideOptions::new(1)).unwrap();
    assert_eq!(clean.kind, VerdictKind::NoCounterexampleUpTo(1));
    let v = decide_oneway_bounded(&t, &DecideOptions::new(4)).unwrap();
    let (input, run, _) = refutation(&t, &v);
    assert_eq!((input.as_str(), run), ("ab", 0));
    assert_eq!(v.summary(), "refuted on input \"ab\" (run 0)");
}

#[test]
fn mirror_needs_two_passes() {
    let t = fixtures::load("T_MIRROR");
    let one = decide_sweeping_bounded(&t, PassBound::Finite(1), &DecideOptions::new(6)).unwrap();
    let (input, _, _) = refutation(&t, &one);
    assert_eq!(input, "ab");
    assert!(
        decide_sweeping_bounded(&t, PassBound::Finite(1), &DecideOptions::new(1))
            .unwrap()
            .certificate
            .is_none()
    );
    let two = decide_sweeping_bounded(&t, PassBound::Finite(2), &DecideOptions::new(6)).unwrap();
    assert_eq!(two.kind, VerdictKind::NoCounterexampleUpTo(6));
}

#[test]
fn one_way_functions_have_no_counterexample() {
    for (name, n) in [("T_ID", 7), ("T_COPY_ABC", 6), ("T_RUNNING", 6)] {
        let t = fixtures::load(name);
        let v = decide_oneway_bounded(&t, &DecideOptions::new(n)).unwrap();
        assert_eq!(v.kind, VerdictKind::NoCounterexampleUpTo(n), "{name}");
        assert!(v.stats.inputs > 0 && v.stats.runs > 0);
    }
}

#[test]
fn zigzag_counting_is_refuted() {
    // a^n -> (abc)^n ab (def)^n de g^n needs n before the input ends.
    let t = fixtures::load("FIG4");
    let v = decide_oneway_bounded(&t, &DecideOptions::new(3)).unwrap();
    let (input, _, text) = refutation(&t, &v);
    assert_eq!(input, "a");
    assert!(text.contains("trace \"g\""));
}

#[test]
fn one_pass_sweeping_agrees_with_one_way() {
    for (name, _) in fixtures::ALL {
        let t = fixtures::load(name);
        let opts = DecideOptions::new(if t.input_alphabet().len() > 2 { 5 } else { 6 });
        let a = decide_oneway_bounded(&t, &opts).unwrap();
        let b = decide_sweeping_bounded(&t, PassBound::Finite(1), &opts).unwrap();
        assert_eq!(a.kind, b.kind, "{name}");
        let key = |v: &untwist::Verdict| {
            v.certificate
                .as_ref()
                .map(|c| (c.input_text.clone(), c.run_index))
        };
        assert_eq!(key(&a), key(&b), "{name}");
    }
}

#[test]
fn symbolic_passes_exceed_the_bound_with_a_proxy() {
    let t = fixtures::load("T_MIRROR");
    let v = decide_sweeping_bounded(&t, PassBound::Symbolic, &DecideOptions::new(4)).unwrap();
    assert_eq!(v.kind, VerdictKind::BoundExceeded);
    assert_eq!(v.proxy.unwrap().kind, VerdictKind::NoCounterexampleUpTo(4));
    assert!(decide_sweeping_bounded(&t, PassBound::Finite(0), &DecideOptions::new(4)).is_err());
    assert!("0".parse::<PassBound>().is_err());
    assert_eq!("symbolic".parse::<PassBound>(), Ok(PassBound::Symbolic));
}

#[test]
fn period_bounds_only_matter_with_inversions() {
    let mut opts = DecideOptions::new(4);
    opts.period_bound = PeriodBound::Finite(1);
    let t = fixtures::load("T_ID");
    assert_eq!(
        decide_oneway_bounded(&t, &opts).unwrap().kind,
        VerdictKind::NoCounterexampleUpTo(4)
    );
    let t = fixtures::load("T_COPY_AB");
    let v = decide_oneway_bounded(&t, &opts).unwrap();
    let (_, _, text) = refutation(&t, &v);
    assert!(text.contains("period-bound 1\n"));
}

/// Replaces one character with a different one, deletes a line, or
/// duplicates a line.
fn mutate(rng: &mut ChaCha8Rng, text: &str) -> String {
    let lines: Vec<&str> = text.lines().collect();
    match rng.gen_range(0..3) {
        0 => {
            let mut chars: Vec<char> = text.chars().collect();
            let i = rng.gen_range(0..chars.len());
            chars[i] = ['0', '7', 'a', 'z', ' ', '"']
                .into_iter()
                .filter(|&c| c != chars[i])
                .nth(rng.gen_range(0..5))
                .unwrap();
            chars.into_iter().collect()
        }
        1 => {
            let i = rng.gen_range(0..lines.len());
            let mut v = lines.clone();
            v.remove(i);
            v.join("\n") + "\n"
        }
        _ => {
            let i = rng.gen_range(0..lines.len());
            let mut v = lines.clone();
            v.insert(i, lines[i]);
            v.join("\n") + "\n"
        }
    }
}

#[test]
fn mutated_certificates_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases = [
        (
            "T_COPY_AB",
            decide_oneway_bounded(&fixtures::load("T_COPY_AB"), &DecideOptions::new(3)).unwrap(),
        ),
        (
            "T_MIRROR",
            decide_sweeping_bounded(
                &fixtures::load("T_MIRROR"),
                PassBound::Finite(1),
                &DecideOptions::new(3),
            )
            .unwrap(),
        ),
    ];
    for (name, v) in cases {
        let t = fixtures::load(name);
        let (_, _, text) = refutation(&t, &v);
        let mut rejected = 0;
        while rejected < 10 {
            let m = mutate(&mut rng, &text);
            if m == text {
                continue;
            }
            assert!(!verify_certificate(&t, &m), "{name} accepted:\n{m}");
            rejected += 1;
        }
        assert!(!verify_certificate(&t, ""));
        assert!(!verify_certificate(&fixtures::load("T_ID"), &text));
    }
}

#[test]
fn renamed_states_invalidate_the_certificate() {
    let t = fixtures::load("T_COPY_AB");
    let v = decide_oneway_bounded(&t, &DecideOptions::new(3)).unwrap();
    let (_, _, text) = refutation(&t, &v);
    let renamed: String = serialize_transducer(&t)
        .lines()
        .map(|l| {
            let tokens: Vec<&str> = l
                .split(' ')
                .map(|w| if w == "p" { "p_renamed" } else { w })
                .collect();
            tokens.join(" ") + "\n"
        })
        .collect();
    let t2 = parse_transducer(&renamed).unwrap();
    assert_ne!(t2, t);
    assert!(!verify_certificate(&t2, &text));
}
