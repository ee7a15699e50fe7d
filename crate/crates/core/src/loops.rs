//! Loops, components, anchors, traces and pumping.

use std::collections::HashMap;

use crate::effect::{effect_of_interval, Effect};
use crate::error::{Error, Result};
use crate::run::{DelimitedInput, Factor, Location, Run, Step};
use crate::transducer::Transducer;
use crate::word::Word;

/// An interval `[x1, x2]` whose borders carry the same crossing sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub x1: usize,
    pub x2: usize,
    pub effect: Effect,
    pub idempotent: bool,
}

impl Loop {
    /// The interval `[x1, x2]` with its effect; `idempotent` also requires
    /// equal border crossing sequences.
    pub fn new(run: &Run, x1: usize, x2: usize) -> Loop {
        let effect = effect_of_interval(run, x1, x2);
        let idempotent = effect.c1 == effect.c2 && effect.is_idempotent();
        Loop {
            x1,
            x2,
            effect,
            idempotent,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.effect.c1 == self.effect.c2
    }

    pub fn width(&self) -> usize {
        self.x2 - self.x1
    }
}

/// Loops strictly inside the end-markers, i.e. `1 ≤ x1 < x2 ≤ ω − 1`, so that
/// pumping replicates input letters only. Ordered by `(x1, x2)`.
pub fn enumerate_loops(run: &Run, idempotent_only: bool) -> Vec<Loop> {
    let omega = run.omega();
    let cs: Vec<_> = (0..=omega).map(|x| run.crossing_sequence(x)).collect();
    let mut out = Vec::new();
    for x1 in 1..omega {
        for x2 in x1 + 1..omega {
            if cs[x1] == cs[x2] {
                let l = Loop::new(run, x1, x2);
                if l.idempotent || !idempotent_only {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// A cycle of a loop's flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub x1: usize,
    pub x2: usize,
    /// Node set in increasing order.
    pub levels: Vec<usize>,
    /// Nodes in cycle order starting from the largest.
    pub cycle: Vec<usize>,
    pub left_to_right: bool,
    pub anchor: Location,
    pub anchor_index: usize,
    /// The factors of this component in run order.
    pub factors: Vec<Factor>,
    /// The same factors in cycle order from the anchor.
    pub trace: Vec<Factor>,
}

impl Component {
    pub fn min_level(&self) -> usize {
        self.levels[0]
    }

    pub fn max_level(&self) -> usize {
        *self.levels.last().unwrap()
    }

    pub fn trace_output(&self, run: &Run) -> Word {
        self.trace
            .iter()
            .flat_map(|f| f.output(run).iter().copied())
            .collect()
    }
}

/// A trace as a standalone value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub factors: Vec<Factor>,
    pub output: Word,
}

/// Components of `lp`, sorted by anchor in run order.
pub fn components_of(run: &Run, lp: &Loop) -> Vec<Component> {
    let factors = run.intercepted_factors(lp.x1, lp.x2);
    let mut by_start: HashMap<usize, Factor> = HashMap::new();
    for f in &factors {
        by_start.insert(run.location(f.start).y, *f);
    }
    let flow = &lp.effect.flow;
    let n = flow.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] || flow.succ(start).is_none() {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut cur = start;
        let mut closed = false;
        while let Some(nx) = flow.succ(cur) {
            if nx == start {
                closed = true;
                break;
            }
            if seen[nx] {
                break;
            }
            seen[nx] = true;
            nodes.push(nx);
            cur = nx;
        }
        if !closed {
            continue;
        }
        let mut levels = nodes.clone();
        levels.sort_unstable();
        let max = *levels.last().unwrap();
        let pos = nodes.iter().position(|&v| v == max).unwrap();
        let cycle: Vec<usize> = nodes[pos..].iter().chain(&nodes[..pos]).copied().collect();
        let left_to_right = levels[0] % 2 == 0;
        let anchor = Location::new(if left_to_right { lp.x1 } else { lp.x2 }, max);
        let Some(anchor_index) = run.index_of(anchor) else {
            continue;
        };
        let trace: Vec<Factor> = cycle
            .iter()
            .filter_map(|y| by_start.get(y).copied())
            .collect();
        let mut in_run = trace.clone();
        in_run.sort_by_key(|f| f.start);
        out.push(Component {
            x1: lp.x1,
            x2: lp.x2,
            levels,
            cycle,
            left_to_right,
            anchor,
            anchor_index,
            factors: in_run,
            trace,
        });
    }
    out.sort_by_key(|c| c.anchor_index);
    out
}

pub fn trace_of(run: &Run, c: &Component) -> Trace {
    Trace {
        factors: c.trace.clone(),
        output: c.trace_output(run),
    }
}

/// Replicates the loop's letters `times` times and reconnects the run.
///
/// Every step reading a letter of the pumped word is a shifted copy of the
/// original step reading the corresponding letter; the new run follows these
/// copies from `(0,0)`.
pub fn pump(t: &Transducer, run: &Run, lp: &Loop, times: usize) -> Result<(Word, Run)> {
    if times == 0 {
        return Err(Error::InvalidArgument(
            "pumping multiplicity must be positive".into(),
        ));
    }
    let n = run.omega();
    if lp.x1 == 0 || lp.x2 >= n || lp.x1 >= lp.x2 || !lp.is_loop() {
        return Err(Error::InvalidArgument(format!(
            "[{},{}] is not a loop inside the input",
            lp.x1, lp.x2
        )));
    }
    let raw = run.input().raw();
    let (a, b) = (lp.x1 - 1, lp.x2 - 1);
    let mut word = raw[..a].to_vec();
    for _ in 0..times {
        word.extend_from_slice(&raw[a..b]);
    }
    word.extend_from_slice(&raw[b..]);

    let w = lp.width();
    let extra = (times - 1) * w;
    let new_n = n + extra;
    let orig = |j: usize| {
        if j <= lp.x1 {
            j
        } else if j <= lp.x1 + times * w {
            lp.x1 + (j - lp.x1 - 1) % w + 1
        } else {
            j - extra
        }
    };
    let mut by_letter: Vec<Vec<&Step>> = vec![Vec::new(); n + 1];
    for s in run.steps() {
        by_letter[s.reads()].push(s);
    }
    let mut next: HashMap<Location, Step> = HashMap::new();
    for j in 1..=new_n {
        let i = orig(j);
        for s in &by_letter[i] {
            let shift = |l: Location| Location::new(l.x + j - i, l.y);
            let copy = Step {
                from: shift(s.from),
                to: shift(s.to),
                ..(*s).clone()
            };
            if next.insert(copy.from, copy).is_some() {
                return Err(Error::InternalInconsistency(
                    "two pumped steps leave one location".into(),
                ));
            }
        }
    }
    let end = Location::new(new_n, 0);
    let mut steps = Vec::new();
    let mut loc = Location::new(0, 0);
    while loc != end {
        let s = next
            .get(&loc)
            .ok_or_else(|| Error::InternalInconsistency(format!("pumped run is stuck at {loc}")))?;
        if steps.len() > next.len() {
            return Err(Error::InternalInconsistency(
                "pumped run does not terminate".into(),
            ));
        }
        loc = s.to;
        steps.push(s.clone());
    }
    let pumped = Run::from_steps(DelimitedInput::new(&word), t.initial(), steps)
        .map_err(Error::InternalInconsistency)?;
    Ok((word, pumped))
}

/// `out(ρ0)·out(tr C1)^m·out(ρ1)···out(tr Ck)^m·out(ρk)` where the pieces
/// `ρi` are delimited by the anchors of the components in run order.
pub fn predicted_pump_output(run: &Run, comps: &[Component], m: usize) -> Word {
    let mut sorted: Vec<&Component> = comps.iter().collect();
    sorted.sort_by_key(|c| c.anchor_index);
    let mut out = Vec::new();
    let mut prev = 0;
    for c in sorted {
        out.extend_from_slice(run.output_between(prev, c.anchor_index));
        let tr = c.trace_output(run);
        for _ in 0..m {
            out.extend_from_slice(&tr);
        }
        prev = c.anchor_index;
    }
    out.extend_from_slice(run.output_between(prev, run.last_index()));
    out
}

/// Whether every `(L', C') ⊏ (L, C)` has an empty trace output: `L'` ranges
/// over idempotent loops strictly inside `L` and `C'` over the components
/// having a factor inside some factor of `C`.
pub fn is_output_minimal(run: &Run, lp: &Loop, c: &Component) -> bool {
    for a in lp.x1..lp.x2 {
        for b in a + 1..=lp.x2 {
            if (a, b) == (lp.x1, lp.x2) {
                continue;
            }
            let sub = Loop::new(run, a, b);
            if !sub.idempotent {
                continue;
            }
            for c2 in components_of(run, &sub) {
                let related = c2
                    .factors
                    .iter()
                    .any(|f| c.factors.iter().any(|g| f.within(g)));
                if related && !c2.trace_output(run).is_empty() {
                    return false;
                }
            }
        }
    }
    true
}
