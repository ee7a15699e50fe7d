//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use untwist::run::Step;
use untwist::transducer::{Dir, InSym};
use untwist::word::words_up_to;
use untwist::{Run, Transducer};

/// The function each fixture is meant to compute, written directly on
/// strings. `None` means the input is outside the domain.
pub fn fixture_function(name: &str, u: &str) -> Option<String> {
    let in_abc_star =
        |w: &str| w.len().is_multiple_of(3) && w.as_bytes().chunks(3).all(|c| c == b"abc");
    match name {
        "T_ID" => Some(u.to_string()),
        "T_COPY_AB" => Some(format!("{u}{u}")),
        "T_COPY_ABC" => in_abc_star(u).then(|| format!("{u}{u}")),
        "T_MIRROR" => Some(format!("{u}{}", u.chars().rev().collect::<String>())),
        "T_RUNNING" => {
            let blocks: Vec<&str> = u.split('$').collect();
            let out: Vec<String> = blocks
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let next = blocks.get(i + 1).map_or(0, |n| n.len());
                    if in_abc_star(b) && next.is_multiple_of(2) {
                        format!("{b}{b}")
                    } else {
                        b.to_string()
                    }
                })
                .collect();
            Some(out.join("$"))
        }
        _ => panic!("no oracle for {name}"),
    }
}

/// A transition taken by a run, in a form independent of the run engine.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Move {
    pub letter: usize,
    pub from_state: usize,
    pub to_state: usize,
    pub right: bool,
    pub output: Vec<usize>,
}

/// Every normalized successful run of `t` on `⊢u⊣` as a list of moves.
///
/// Runs are explored move by move from the configuration reading `⊢` in the
/// initial state. Every arrival at a cut gets the next level of that cut; a
/// run is pruned as soon as it arrives somewhere in a state and level parity
/// it already had at that cut.
pub fn naive_runs(t: &Transducer, u: &[usize]) -> Vec<Vec<Move>> {
    let n = u.len() + 2;
    let letters: Vec<InSym> = std::iter::once(InSym::Begin)
        .chain(u.iter().map(|&a| InSym::Letter(a)))
        .chain([InSym::End])
        .collect();
    let mut out = Vec::new();
    let mut visits: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    visits[0].push((t.initial(), 0));
    let mut path = Vec::new();
    explore(
        t,
        &letters,
        1,
        t.initial(),
        &mut visits,
        &mut path,
        &mut out,
    );
    out
}

fn explore(
    t: &Transducer,
    letters: &[InSym],
    letter: usize,
    q: usize,
    visits: &mut Vec<Vec<(usize, usize)>>,
    path: &mut Vec<Move>,
    out: &mut Vec<Vec<Move>>,
) {
    let n = letters.len();
    for tr in t.transitions() {
        if tr.from != q || tr.symbol != letters[letter - 1] {
            continue;
        }
        let right = tr.dir == Dir::Right;
        let cut = if right { letter } else { letter - 1 };
        let level = visits[cut].len();
        if visits[cut]
            .iter()
            .any(|&(s, y)| s == tr.to && y % 2 == level % 2)
        {
            continue;
        }
        visits[cut].push((tr.to, level));
        path.push(Move {
            letter,
            from_state: q,
            to_state: tr.to,
            right,
            output: tr.output.clone(),
        });
        if cut == n {
            if t.is_final(tr.to) {
                out.push(path.clone());
            }
        } else {
            // Even levels read the letter to the right of the cut, odd levels the one to the left.
            let next = if level.is_multiple_of(2) {
                cut + 1
            } else {
                cut
            };
            if (1..=n).contains(&next) {
                explore(t, letters, next, tr.to, visits, path, out);
            }
        }
        path.pop();
        visits[cut].pop();
    }
}

pub fn moves_of(run: &Run) -> Vec<Move> {
    run.steps().iter().map(step_move).collect()
}

fn step_move(s: &Step) -> Move {
    Move {
        letter: s.reads(),
        from_state: s.source,
        to_state: s.target,
        right: s.dir == Dir::Right,
        output: s.output.clone(),
    }
}

/// All inputs over the alphabet of `t` up to length `n`, rendered.
pub fn inputs(t: &Transducer, n: usize) -> Vec<(Vec<usize>, String)> {
    words_up_to(t.input_alphabet().len(), n)
        .map(|u| {
            let s = t.render_input(&u);
            (u, s)
        })
        .collect()
}

/// The crossing levels of cut `x`, recomputed from the steps.
pub fn crossing_oracle(run: &Run, x: usize) -> Vec<usize> {
    let mut seq = Vec::new();
    if x == 0 {
        seq.push(run.initial());
    }
    for s in run.steps() {
        let cut = if s.dir == Dir::Right {
            s.reads()
        } else {
            s.reads() - 1
        };
        if cut == x {
            seq.push(s.target);
        }
    }
    seq
}

/// A random transducer with at most `states` states, `letters` input
/// letters and `transitions` transitions; never moves left on `⊢`.
pub fn random_transducer(
    rng: &mut impl rand::Rng,
    states: usize,
    letters: usize,
    transitions: usize,
) -> Transducer {
    use untwist::transducer::{TransducerSpec, TransitionSpec};
    let nq = rng.gen_range(1..=states);
    let nl = rng.gen_range(1..=letters);
    let names: Vec<String> = (0..nq).map(|i| format!("q{i}")).collect();
    let input: Vec<String> = ["a", "b", "c"][..nl]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut spec = TransducerSpec {
        name: "R".into(),
        states: names.clone(),
        input: input.clone(),
        output: vec!["x".into(), "y".into()],
        initial: names[0].clone(),
        finals: names
            .iter()
            .filter(|_| rng.gen_bool(0.6))
            .cloned()
            .collect(),
        transitions: Vec::new(),
    };
    let symbols: Vec<String> = input
        .iter()
        .cloned()
        .chain(["|-".to_string(), "-|".to_string()])
        .collect();
    for _ in 0..rng.gen_range(1..=transitions) {
        let symbol = symbols[rng.gen_range(0..symbols.len())].clone();
        let dir = if symbol == "|-" || rng.gen_bool(0.5) {
            Dir::Right
        } else {
            Dir::Left
        };
        let output = (0..rng.gen_range(0..=2))
            .map(|_| if rng.gen_bool(0.5) { "x" } else { "y" }.to_string())
            .collect();
        let tr = TransitionSpec {
            from: names[rng.gen_range(0..nq)].clone(),
            symbol,
            dir,
            to: names[rng.gen_range(0..nq)].clone(),
            output,
        };
        if !spec.transitions.contains(&tr) {
            spec.transitions.push(tr);
        }
    }
    Transducer::build(&spec).expect("generated names are declared")
}
