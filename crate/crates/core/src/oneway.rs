//! Left-to-right output replay driven by a run decomposition.
//!
//! A one-way machine can only produce output that depends on the input read
//! so far. The replay attributes every emitted chunk to an input position and
//! checks that positions never decrease while the emitted words concatenate
//! to the run output.

use crate::decomposition::{build_decomposition, BlockData, Decomposition, Outcome, PieceKind};
use crate::error::{Error, Result};
use crate::inversion::RunAnalysis;
use crate::period::PeriodBound;
use crate::run::{enumerate_runs, Caps, LocationSet, Run};
use crate::transducer::Transducer;
use crate::word::Word;

/// How an emission was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmissionSource {
    /// Output of the run between two consecutive witness locations, split by
    /// where each step reads: on the current letter, to its left (already
    /// read) or to its right (yet to be read).
    Diagonal {
        window: usize,
        left: usize,
        right: usize,
    },
    /// Output regenerated from a block's `prefix · root^* · suffix` description.
    Block,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    /// Input position at which the chunk is emitted.
    pub x: usize,
    pub piece: usize,
    pub source: EmissionSource,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub emissions: Vec<Emission>,
    pub output: Word,
}

impl Replay {
    /// Positions never decrease along the transcript.
    pub fn is_left_to_right(&self) -> bool {
        self.emissions.windows(2).all(|w| w[0].x <= w[1].x)
    }

    pub fn render(&self, t: &Transducer) -> String {
        let mut s = String::new();
        for e in &self.emissions {
            let src = match &e.source {
                EmissionSource::Diagonal {
                    window,
                    left,
                    right,
                } => {
                    format!("diagonal window={window} left={left} right={right}")
                }
                EmissionSource::Block => "block".to_string(),
            };
            s.push_str(&format!(
                "emit x={} piece={} {src} \"{}\"\n",
                e.x,
                e.piece,
                t.render_output(&e.word)
            ));
        }
        s
    }
}

fn diagonal_chunk(run: &Run, from: usize, to: usize, x: usize, piece: usize) -> Emission {
    let (mut window, mut left, mut right) = (0, 0, 0);
    let mut word = Vec::new();
    for s in &run.steps()[from..to] {
        let r = s.reads();
        let n = s.output.len();
        if r == x + 1 {
            window += n;
        } else if r <= x {
            left += n;
        } else {
            right += n;
        }
        word.extend_from_slice(&s.output);
    }
    Emission {
        x,
        piece,
        source: EmissionSource::Diagonal {
            window,
            left,
            right,
        },
        word,
    }
}

fn block_letter(b: &BlockData, i: usize) -> usize {
    let (a, m) = (b.prefix.len(), b.middle.len());
    if i < a {
        b.prefix[i]
    } else if i < a + m {
        let p = b.period.expect("nonempty middle has a period");
        b.middle[(i - a) % p]
    } else {
        b.suffix[i - a - m]
    }
}

/// Replays the output of `run` piece by piece.
///
/// Diagonals emit at each position the output up to that position's witness
/// location. Blocks emit at each position as much of their output as the
/// steps left of that position produce, and the remainder at their right end.
pub fn replay(run: &Run, d: &Decomposition) -> Result<Replay> {
    let mut emissions = Vec::new();
    for (pi, p) in d.pieces.iter().enumerate() {
        let (x1, x2) = (run.location(p.start).x, run.location(p.end).x);
        match &p.kind {
            PieceKind::Diagonal { witness } => {
                let mut prev = p.start;
                for (k, &w) in witness.iter().enumerate() {
                    emissions.push(diagonal_chunk(run, prev, w, x1 + k, pi));
                    prev = w;
                }
                emissions.push(diagonal_chunk(run, prev, p.end, x2, pi));
            }
            PieceKind::Block(b) => {
                let total = b.prefix.len() + b.middle.len() + b.suffix.len();
                let mut done = 0;
                for x in x1..=x2 {
                    let target = if x == x2 {
                        total
                    } else {
                        run.subrun_output(&LocationSet::new(p.start, p.end, 0, x))
                            .len()
                    };
                    let word: Word = (done..target.max(done))
                        .map(|i| block_letter(b, i))
                        .collect();
                    done = done.max(target);
                    emissions.push(Emission {
                        x,
                        piece: pi,
                        source: EmissionSource::Block,
                        word,
                    });
                }
            }
        }
    }
    let output: Word = emissions
        .iter()
        .flat_map(|e| e.word.iter().copied())
        .collect();
    let r = Replay { emissions, output };
    if !r.is_left_to_right() {
        return Err(Error::InternalInconsistency(
            "replay moves backwards".into(),
        ));
    }
    if r.output != run.output() {
        return Err(Error::InternalInconsistency(
            "replayed output differs from the run output".into(),
        ));
    }
    Ok(r)
}

/// A successful one-way simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simulation {
    pub run_index: usize,
    pub run: Run,
    pub decomposition: Decomposition,
    pub replay: Replay,
}

impl Simulation {
    pub fn output(&self) -> &[usize] {
        &self.replay.output
    }
}

/// Replays the first run of `t` on `u` that admits a decomposition.
///
/// Returns `None` when `u` is outside the domain or no run decomposes, and an
/// error when two runs on `u` produce different outputs.
pub fn simulate_oneway(
    t: &Transducer,
    u: &[usize],
    bound: PeriodBound,
    caps: &Caps,
) -> Result<Option<Simulation>> {
    let runs = enumerate_runs(t, u, caps)?;
    if let Some(first) = runs.first() {
        if let Some(other) = runs.iter().find(|r| r.output() != first.output()) {
            return Err(Error::NotFunctional {
                input: t.render_input(u),
                first: t.render_output(first.output()),
                second: t.render_output(other.output()),
            });
        }
    }
    for (i, run) in runs.into_iter().enumerate() {
        let analysis = RunAnalysis::new(&run);
        if let Outcome::Decomposed(d) = build_decomposition(&analysis, bound)? {
            let replay = replay(&run, &d)?;
            return Ok(Some(Simulation {
                run_index: i,
                run,
                decomposition: d,
                replay,
            }));
        }
    }
    Ok(None)
}
