//! Normalized successful runs: enumeration, locations, crossing sequences,
//! intercepted factors and outputs.
//!
//! The padded input is `a_1 … a_n` with `a_1 = ⊢` and `a_n = ⊣`; cuts are
//! numbered `0..=n`, cut `x` lying between `a_x` and `a_{x+1}`. A location
//! `(x, y)` is the `y`-th crossing of cut `x`. At an even level the head reads
//! `a_{x+1}`, at an odd level it reads `a_x`.

use std::fmt;

use crate::error::{Error, Result};
use crate::transducer::{Dir, InSym, StateId, Transducer};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Location {
    pub x: usize,
    pub y: usize,
}

impl Location {
    pub fn new(x: usize, y: usize) -> Location {
        Location { x, y }
    }

    /// 1-based index of the letter read when the head stands at this location.
    pub fn reads(self) -> usize {
        if self.y.is_multiple_of(2) {
            self.x + 1
        } else {
            self.x
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// An input word together with its end-markers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DelimitedInput {
    raw: Word,
    letters: Vec<InSym>,
}

impl DelimitedInput {
    pub fn new(raw: &[usize]) -> DelimitedInput {
        let mut letters = Vec::with_capacity(raw.len() + 2);
        letters.push(InSym::Begin);
        letters.extend(raw.iter().map(|&a| InSym::Letter(a)));
        letters.push(InSym::End);
        DelimitedInput {
            raw: raw.to_vec(),
            letters,
        }
    }

    pub fn raw(&self) -> &[usize] {
        &self.raw
    }

    /// Number of padded letters; cuts range over `0..=omega`.
    pub fn omega(&self) -> usize {
        self.letters.len()
    }

    /// The padded letter `a_i` for `1 ≤ i ≤ omega`.
    pub fn letter(&self, i: usize) -> InSym {
        self.letters[i - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub from: Location,
    pub to: Location,
    pub source: StateId,
    pub target: StateId,
    pub symbol: InSym,
    pub dir: Dir,
    pub output: Word,
}

impl Step {
    /// 1-based index of the letter this step reads.
    pub fn reads(&self) -> usize {
        self.from.reads()
    }
}

/// A successful run as a path of located transitions, with derived indexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    input: DelimitedInput,
    initial: StateId,
    steps: Vec<Step>,
    locations: Vec<Location>,
    states: Vec<StateId>,
    levels: Vec<Vec<usize>>,
    out_prefix: Vec<usize>,
    output: Word,
}

impl Run {
    /// Assembles a run from consecutive steps starting at `(0,0)`.
    ///
    /// Only shape is checked here (steps chain, locations are distinct and
    /// fill levels `0..h` at each cut); [`validate_run`] replays semantics.
    pub fn from_steps(
        input: DelimitedInput,
        initial: StateId,
        steps: Vec<Step>,
    ) -> std::result::Result<Run, String> {
        let omega = input.omega();
        let mut locations = vec![Location::new(0, 0)];
        let mut states = vec![initial];
        for (i, s) in steps.iter().enumerate() {
            if s.from != *locations.last().unwrap() || s.source != *states.last().unwrap() {
                return Err(format!("step {i} does not continue the previous one"));
            }
            locations.push(s.to);
            states.push(s.target);
        }
        let mut levels: Vec<Vec<Option<usize>>> = vec![Vec::new(); omega + 1];
        for (i, l) in locations.iter().enumerate() {
            if l.x > omega {
                return Err(format!("location {l} is outside the input"));
            }
            let col = &mut levels[l.x];
            if col.len() <= l.y {
                col.resize(l.y + 1, None);
            }
            if col[l.y].replace(i).is_some() {
                return Err(format!("location {l} is visited twice"));
            }
        }
        let levels = levels
            .into_iter()
            .enumerate()
            .map(|(x, col)| {
                col.into_iter()
                    .enumerate()
                    .map(|(y, v)| v.ok_or_else(|| format!("location ({x},{y}) is missing")))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let mut out_prefix = Vec::with_capacity(steps.len() + 1);
        let mut output = Vec::new();
        out_prefix.push(0);
        for s in &steps {
            output.extend_from_slice(&s.output);
            out_prefix.push(output.len());
        }
        Ok(Run {
            input,
            initial,
            steps,
            locations,
            states,
            levels,
            out_prefix,
            output,
        })
    }

    pub fn input(&self) -> &DelimitedInput {
        &self.input
    }

    pub fn omega(&self) -> usize {
        self.input.omega()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Locations in run order; location `i` is the source of step `i`.
    pub fn locations(&self) -> &[Location] {
        &self.locations
    }

    pub fn num_locations(&self) -> usize {
        self.locations.len()
    }

    pub fn location(&self, i: usize) -> Location {
        self.locations[i]
    }

    /// The state `ρ(ℓ)` at the `i`-th location.
    pub fn state_at(&self, i: usize) -> StateId {
        self.states[i]
    }

    /// Run-order index of a location, if the run visits it.
    pub fn index_of(&self, l: Location) -> Option<usize> {
        self.levels.get(l.x)?.get(l.y).copied()
    }

    /// Number of crossings of cut `x`.
    pub fn height(&self, x: usize) -> usize {
        self.levels[x].len()
    }

    /// Run-order index of `(x, y)`.
    pub fn at(&self, x: usize, y: usize) -> usize {
        self.levels[x][y]
    }

    pub fn last_index(&self) -> usize {
        self.locations.len() - 1
    }

    /// States at `(x,0), (x,1), …` bottom-up.
    pub fn crossing_sequence(&self, x: usize) -> Vec<StateId> {
        self.levels[x].iter().map(|&i| self.states[i]).collect()
    }

    pub fn output(&self) -> &[usize] {
        &self.output
    }

    /// Output of the steps between location indices `i ≤ j`.
    pub fn output_between(&self, i: usize, j: usize) -> &[usize] {
        &self.output[self.out_prefix[i]..self.out_prefix[j]]
    }

    /// Length of the output produced before location index `i`.
    pub fn output_offset(&self, i: usize) -> usize {
        self.out_prefix[i]
    }

    /// Maximal factors of the run intercepted by `[x1, x2]`, in run order.
    ///
    /// A step belongs to the interval iff the letter it reads has index in
    /// `x1+1 ..= x2`.
    pub fn intercepted_factors(&self, x1: usize, x2: usize) -> Vec<Factor> {
        let mut out = Vec::new();
        let mut start: Option<usize> = None;
        for (i, s) in self.steps.iter().enumerate() {
            let r = s.reads();
            let inside = r > x1 && r <= x2;
            match (inside, start) {
                (true, None) => start = Some(i),
                (false, Some(b)) => {
                    out.push(self.make_factor(x1, x2, b, i));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(b) = start {
            out.push(self.make_factor(x1, x2, b, self.steps.len()));
        }
        out
    }

    fn make_factor(&self, x1: usize, x2: usize, start: usize, end: usize) -> Factor {
        let side = |x: usize| if x == x1 { Side::Left } else { Side::Right };
        let kind = match (side(self.locations[start].x), side(self.locations[end].x)) {
            (Side::Left, Side::Left) => FactorKind::LL,
            (Side::Left, Side::Right) => FactorKind::LR,
            (Side::Right, Side::Left) => FactorKind::RL,
            (Side::Right, Side::Right) => FactorKind::RR,
        };
        Factor {
            kind,
            x1,
            x2,
            start,
            end,
        }
    }

    /// Output of `ρ|Z`: steps whose endpoints both lie in `z`, in run order.
    pub fn subrun_output(&self, z: &LocationSet) -> Word {
        let mut out = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            if z.contains(self, i) && z.contains(self, i + 1) {
                out.extend_from_slice(&s.output);
            }
        }
        out
    }

    /// Run dump: one line per step and a final output line.
    pub fn dump(&self, t: &Transducer) -> String {
        let mut s = String::new();
        for (i, st) in self.steps.iter().enumerate() {
            s.push_str(&format!(
                "step {i}: {} -{},{}/\"{}\"-> {} state {}\n",
                st.from,
                t.symbol_name(st.symbol),
                st.dir.letter(),
                t.render_output(&st.output),
                st.to,
                t.state_name(st.target)
            ));
        }
        s.push_str(&format!("output: \"{}\"\n", t.render_output(&self.output)));
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    LL,
    LR,
    RL,
    RR,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A maximal factor intercepted by `[x1, x2]`: steps `start..end`, i.e. from
/// location index `start` to location index `end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: FactorKind,
    pub x1: usize,
    pub x2: usize,
    pub start: usize,
    pub end: usize,
}

impl Factor {
    pub fn output<'r>(&self, run: &'r Run) -> &'r [usize] {
        run.output_between(self.start, self.end)
    }

    /// Whether the steps of `self` are among the steps of `other`.
    pub fn within(&self, other: &Factor) -> bool {
        other.start <= self.start && self.end <= other.end
    }
}

/// `Z = K ∩ (I × ℕ)` for a location interval `K` (run-order indices,
/// inclusive) and a position interval `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocationSet {
    pub first: usize,
    pub last: usize,
    pub x1: usize,
    pub x2: usize,
}

impl LocationSet {
    pub fn new(first: usize, last: usize, x1: usize, x2: usize) -> LocationSet {
        LocationSet {
            first,
            last,
            x1,
            x2,
        }
    }

    /// All locations of `run`.
    pub fn whole(run: &Run) -> LocationSet {
        LocationSet::new(0, run.last_index(), 0, run.omega())
    }

    pub fn contains(&self, run: &Run, i: usize) -> bool {
        let l = run.location(i);
        self.first <= i && i <= self.last && self.x1 <= l.x && l.x <= self.x2
    }
}

/// Limits on run enumeration. Exceeding one is an error, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_runs: usize,
    /// Steps per run; `None` means `10·h_max·(ω+1)`.
    pub max_steps: Option<usize>,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_runs: 100_000,
            max_steps: None,
        }
    }
}

struct Search<'a> {
    t: &'a Transducer,
    input: &'a DelimitedInput,
    counts: Vec<usize>,
    visited: Vec<Vec<bool>>,
    path: Vec<Step>,
    runs: Vec<Run>,
    max_runs: usize,
    max_steps: usize,
}

impl Search<'_> {
    fn dfs(&mut self, loc: Location, q: StateId) -> Result<()> {
        let n = self.input.omega();
        let idx = loc.reads();
        if idx == 0 || idx > n {
            return Ok(());
        }
        let sym = self.input.letter(idx);
        for &ti in self.t.transitions_from(q, sym) {
            let tr = &self.t.transitions()[ti];
            let cut = match tr.dir {
                Dir::Right => idx,
                Dir::Left => idx - 1,
            };
            let y = self.counts[cut];
            let key = 2 * tr.to + y % 2;
            if self.visited[cut][key] {
                continue;
            }
            if self.path.len() + 1 > self.max_steps {
                return Err(Error::CapExceeded(format!(
                    "run longer than {} steps",
                    self.max_steps
                )));
            }
            let to = Location::new(cut, y);
            self.path.push(Step {
                from: loc,
                to,
                source: q,
                target: tr.to,
                symbol: sym,
                dir: tr.dir,
                output: tr.output.clone(),
            });
            self.counts[cut] += 1;
            self.visited[cut][key] = true;
            if cut == n {
                if self.t.is_final(tr.to) {
                    if self.runs.len() == self.max_runs {
                        return Err(Error::CapExceeded(format!(
                            "more than {} runs",
                            self.max_runs
                        )));
                    }
                    let run =
                        Run::from_steps(self.input.clone(), self.t.initial(), self.path.clone())
                            .map_err(Error::InternalInconsistency)?;
                    self.runs.push(run);
                }
            } else {
                self.dfs(to, tr.to)?;
            }
            self.visited[cut][key] = false;
            self.counts[cut] -= 1;
            self.path.pop();
        }
        Ok(())
    }
}

/// All normalized successful runs of `t` on `⊢u⊣`, ordered lexicographically
/// by transition choices (canonical transition order).
pub fn enumerate_runs(t: &Transducer, u: &[usize], caps: &Caps) -> Result<Vec<Run>> {
    let input = DelimitedInput::new(u);
    let n = input.omega();
    let q = t.num_states();
    let max_steps = caps.max_steps.unwrap_or(10 * t.h_max() * (n + 1));
    let mut s = Search {
        t,
        input: &input,
        counts: vec![0; n + 1],
        visited: vec![vec![false; 2 * q]; n + 1],
        path: Vec::new(),
        runs: Vec::new(),
        max_runs: caps.max_runs,
        max_steps,
    };
    s.counts[0] = 1;
    s.visited[0][2 * t.initial()] = true;
    s.dfs(Location::new(0, 0), t.initial())?;
    Ok(s.runs)
}

/// Output of a run.
pub fn run_output(run: &Run) -> Word {
    run.output().to_vec()
}

/// Whether `run` is a normalized successful run of `t` on `⊢u⊣`.
pub fn validate_run(t: &Transducer, u: &[usize], run: &Run) -> bool {
    check_run(t, u, run, true).is_ok()
}

/// Like [`validate_run`] without the normalization requirement.
pub fn validate_run_relaxed(t: &Transducer, u: &[usize], run: &Run) -> bool {
    check_run(t, u, run, false).is_ok()
}

/// Replays `run` against the semantics of `t`, naming the first violation.
pub fn check_run(
    t: &Transducer,
    u: &[usize],
    run: &Run,
    normalized: bool,
) -> std::result::Result<(), String> {
    if run.input().raw() != u || u.iter().any(|&a| a >= t.input_alphabet().len()) {
        return Err("input mismatch".into());
    }
    if run.initial() != t.initial() {
        return Err("run does not start in the initial state".into());
    }
    let n = run.omega();
    let mut counts = vec![0usize; n + 1];
    counts[0] = 1;
    let mut seen = vec![vec![false; 2 * t.num_states()]; n + 1];
    seen[0][2 * t.initial()] = true;
    let mut loc = Location::new(0, 0);
    let mut q = t.initial();
    for (i, s) in run.steps().iter().enumerate() {
        if s.from != loc || s.source != q {
            return Err(format!("step {i} is disconnected"));
        }
        if loc.x == n && loc.y.is_multiple_of(2) {
            return Err(format!("step {i} continues past the right end"));
        }
        let idx = loc.reads();
        if idx == 0 || idx > n || s.symbol != run.input().letter(idx) {
            return Err(format!("step {i} reads the wrong symbol"));
        }
        if s.target >= t.num_states() || s.output.iter().any(|&o| o >= t.output_alphabet().len()) {
            return Err(format!("step {i} uses an unknown state or output symbol"));
        }
        let found = t.transitions_from(q, s.symbol).iter().any(|&ti| {
            let tr = &t.transitions()[ti];
            tr.dir == s.dir && tr.to == s.target && tr.output == s.output
        });
        if !found {
            return Err(format!("step {i} is not a transition"));
        }
        let cut = match s.dir {
            Dir::Right => idx,
            Dir::Left => idx - 1,
        };
        let expected = Location::new(cut, counts[cut]);
        if s.to != expected {
            return Err(format!("step {i} reaches {} instead of {expected}", s.to));
        }
        counts[cut] += 1;
        let key = 2 * s.target + expected.y % 2;
        if normalized && seen[cut][key] {
            return Err(format!(
                "step {i} repeats a state at cut {cut} with the same parity"
            ));
        }
        seen[cut][key] = true;
        loc = s.to;
        q = s.target;
    }
    if loc != Location::new(n, 0) || !t.is_final(q) {
        return Err("run does not end in a final state past the right end-marker".into());
    }
    if normalized && (0..=n).any(|x| counts[x].is_multiple_of(2) || counts[x] > t.h_max()) {
        return Err("crossing sequence of even length or longer than h_max".into());
    }
    Ok(())
}
