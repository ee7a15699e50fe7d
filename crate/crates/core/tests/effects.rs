mod common;

use std::collections::BTreeSet;

use untwist::effect::{effect_product, flow_of_interval};
use untwist::run::FactorKind;
use untwist::{effect_of_interval, enumerate_runs, fixtures, Caps, Flow};

/// Glues `f` (left interval) and `g` (right interval) by following every path
/// from an outer border until it leaves through an outer border.
fn glue(f: &Flow, g: &Flow) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    let sources = (0..f.left_height())
        .filter(|y| y % 2 == 0)
        .map(|y| (true, y));
    let sources = sources.chain(
        (0..g.right_height())
            .filter(|y| y % 2 == 1)
            .map(|y| (false, y)),
    );
    for (in_left, start) in sources {
        let (mut side_left, mut y) = (in_left, start);
        for _ in 0..4 * (f.node_count() + g.node_count()) {
            let flow = if side_left { f } else { g };
            let next = flow.succ(y).expect("run flows are complete");
            match (side_left, next % 2) {
                // Leaves through the outer left border, or crosses into `g`.
                (true, 1) => {
                    out.insert((start, next));
                    break;
                }
                (true, _) => (side_left, y) = (false, next),
                (false, 0) => {
                    out.insert((start, next));
                    break;
                }
                (false, _) => (side_left, y) = (true, next),
            }
        }
    }
    out
}

fn every_interval_triple(
    max_len: usize,
    mut check: impl FnMut(&str, &untwist::Run, usize, usize, usize),
) {
    let caps = Caps::default();
    for (name, _) in fixtures::ALL {
        let t = fixtures::load(name);
        for (u, _) in common::inputs(&t, max_len) {
            for r in enumerate_runs(&t, &u, &caps).unwrap() {
                let n = r.omega();
                for a in 0..=n {
                    for b in a + 1..=n {
                        for c in b + 1..=n {
                            check(name, &r, a, b, c);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn flow_products_follow_paths() {
    every_interval_triple(4, |name, r, a, b, c| {
        let (f, g) = (flow_of_interval(r, a, b), flow_of_interval(r, b, c));
        let whole = flow_of_interval(r, a, c);
        let glued = glue(&f, &g);
        assert_eq!(
            whole.edges().into_iter().collect::<BTreeSet<_>>(),
            glued,
            "{name} [{a},{b},{c}]"
        );
        assert_eq!(f.compose(&g).as_ref(), Some(&whole), "{name} [{a},{b},{c}]");
    });
}

#[test]
fn effects_are_a_homomorphism() {
    every_interval_triple(4, |name, r, a, b, c| {
        let (e1, e2) = (effect_of_interval(r, a, b), effect_of_interval(r, b, c));
        assert_eq!(
            effect_product(Some(&e1), Some(&e2)),
            Some(effect_of_interval(r, a, c)),
            "{name} [{a},{b},{c}]"
        );
    });
}

#[test]
fn figure_two_flow_squared() {
    let f = Flow::new(5, 5, &[(0, 1), (1, 3), (3, 4), (4, 2), (2, 0)]).unwrap();
    let ff = f.compose(&f).unwrap();
    assert_eq!(ff.edges_of(FactorKind::LL), [(0, 1), (2, 3)]);
    assert_eq!(ff.edges_of(FactorKind::RR), [(1, 2), (3, 4)]);
    assert_eq!(ff.edges_of(FactorKind::LR), [(4, 0)]);
    assert!(ff.edges_of(FactorKind::RL).is_empty());

    let t = fixtures::load("FIG2");
    let u = t.parse_input("a").unwrap();
    let r = enumerate_runs(&t, &u, &Caps::default()).unwrap().remove(0);
    assert_eq!(flow_of_interval(&r, 1, 2), f);
}

#[test]
fn degree_and_border_mismatches_are_bottom() {
    let f = Flow::new(1, 1, &[(0, 0)]).unwrap();
    let g = Flow::new(3, 1, &[(0, 1), (2, 0)]).unwrap();
    assert!(f.compose(&g).is_none());
    // An odd edge target on the left border needs a left crossing at that level.
    assert!(Flow::new(1, 1, &[(0, 1)]).is_none());
    // Two edges into one node.
    assert!(Flow::new(3, 1, &[(0, 1), (2, 1)]).is_none());
}

#[test]
fn effects_need_matching_crossing_sequences() {
    let t = fixtures::load("T_COPY_AB");
    let caps = Caps::default();
    let r1 = enumerate_runs(&t, &t.parse_input("ab").unwrap(), &caps)
        .unwrap()
        .remove(0);
    let r2 = enumerate_runs(&t, &t.parse_input("b").unwrap(), &caps)
        .unwrap()
        .remove(0);
    let e1 = effect_of_interval(&r1, 0, 1);
    let e2 = effect_of_interval(&r2, 0, 1);
    let inner = effect_of_interval(&r1, 1, 2);
    assert!(e1.product(&inner).is_some());
    assert_eq!(e1.c2, inner.c1);
    assert!(e2.c2 != inner.c1 || e2.product(&inner).is_some());
    assert_eq!(effect_product(None, Some(&inner)), None);
}

#[test]
fn zigzag_intervals_are_idempotent() {
    let t = fixtures::load("FIG4");
    let caps = Caps::default();
    for len in 1..=4 {
        let u = vec![0; len];
        let r = enumerate_runs(&t, &u, &caps).unwrap().remove(0);
        for a in 1..r.omega() {
            for b in a + 1..r.omega() {
                assert!(
                    effect_of_interval(&r, a, b).is_idempotent(),
                    "[{a},{b}] on a^{len}"
                );
            }
        }
    }
}
