mod common;

use untwist::loops::predicted_pump_output;
use untwist::run::FactorKind;
use untwist::{components_of, enumerate_loops, enumerate_runs, fixtures, pump, Caps};

#[test]
fn pumping_matches_fresh_runs_and_prediction() {
    let caps = Caps::default();
    for name in fixtures::MAIN {
        let t = fixtures::load(name);
        let n = if t.input_alphabet().len() > 2 { 6 } else { 4 };
        for (u, text) in common::inputs(&t, n) {
            for r in enumerate_runs(&t, &u, &caps).unwrap() {
                for lp in enumerate_loops(&r, true) {
                    let comps = components_of(&r, &lp);
                    for m in 0..=2 {
                        let (word, pumped) = pump(&t, &r, &lp, m + 1).unwrap();
                        let fresh = enumerate_runs(&t, &word, &caps).unwrap();
                        let moves = common::moves_of(&pumped);
                        assert!(
                            fresh.iter().any(|f| common::moves_of(f) == moves),
                            "{name} {text:?} [{},{}] m={m}",
                            lp.x1,
                            lp.x2
                        );
                        assert_eq!(
                            pumped.output(),
                            predicted_pump_output(&r, &comps, m),
                            "{name} {text:?} [{},{}] m={m}",
                            lp.x1,
                            lp.x2
                        );
                        if let Some(expected) =
                            common::fixture_function(name, &t.render_input(&word))
                        {
                            assert_eq!(t.render_output(pumped.output()), expected);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn loops_stay_inside_the_input() {
    let caps = Caps::default();
    let t = fixtures::load("T_ID");
    for (u, _) in common::inputs(&t, 5) {
        let r = enumerate_runs(&t, &u, &caps).unwrap().remove(0);
        for lp in enumerate_loops(&r, false) {
            assert!(1 <= lp.x1 && lp.x1 < lp.x2 && lp.x2 < r.omega());
            assert_eq!(r.crossing_sequence(lp.x1), r.crossing_sequence(lp.x2));
        }
    }
    let r = enumerate_runs(&t, &[0], &caps).unwrap().remove(0);
    let bad = untwist::Loop::new(&r, 0, 1);
    assert!(pump(&t, &r, &bad, 2).is_err());
}

#[test]
fn components_have_the_expected_shape() {
    let caps = Caps::default();
    for (name, _) in fixtures::ALL {
        let t = fixtures::load(name);
        let n = if t.input_alphabet().len() > 2 { 5 } else { 4 };
        for (u, _) in common::inputs(&t, n) {
            for r in enumerate_runs(&t, &u, &caps).unwrap() {
                for lp in enumerate_loops(&r, true) {
                    let comps = components_of(&r, &lp);
                    let mut covered: Vec<usize> =
                        comps.iter().flat_map(|c| c.levels.clone()).collect();
                    covered.sort_unstable();
                    assert_eq!(covered, (0..r.height(lp.x1)).collect::<Vec<_>>(), "{name}");
                    for c in &comps {
                        let count = |k| c.factors.iter().filter(|f| f.kind == k).count();
                        let k = c.levels.len() / 2;
                        assert_eq!(c.levels.len(), 2 * k + 1);
                        assert_eq!(
                            c.levels,
                            (c.min_level()..=c.max_level()).collect::<Vec<_>>(),
                            "{name}: node set is an interval"
                        );
                        let (ll, rr) = (count(FactorKind::LL), count(FactorKind::RR));
                        assert_eq!((ll, rr), (k, k), "{name}");
                        if c.left_to_right {
                            assert_eq!((count(FactorKind::LR), count(FactorKind::RL)), (1, 0));
                        } else {
                            assert_eq!((count(FactorKind::LR), count(FactorKind::RL)), (0, 1));
                        }
                        let mut trace = c.trace.clone();
                        let mut run_order = c.factors.clone();
                        trace.sort_by_key(|f| f.start);
                        run_order.sort_by_key(|f| f.start);
                        assert_eq!(trace, run_order);
                        assert_eq!(c.anchor_index, c.trace[0].start);
                        assert_eq!(r.location(c.anchor_index), c.anchor);
                    }
                }
            }
        }
    }
}

#[test]
fn zigzag_components() {
    let t = fixtures::load("FIG4");
    let r = enumerate_runs(&t, &[0, 0], &Caps::default())
        .unwrap()
        .remove(0);
    let lp = enumerate_loops(&r, true)
        .into_iter()
        .find(|l| (l.x1, l.x2) == (1, 2))
        .expect("loop [1,2]");
    let comps = components_of(&r, &lp);
    let shapes: Vec<(Vec<usize>, bool)> = comps
        .iter()
        .map(|c| (c.levels.clone(), c.left_to_right))
        .collect();
    assert!(shapes.contains(&(vec![0, 1, 2], true)), "{shapes:?}");
    assert!(shapes.contains(&(vec![3, 4, 5], false)), "{shapes:?}");
    assert!(shapes.contains(&(vec![6], true)), "{shapes:?}");
}
