//! Coverage classes of inversions, diagonal and block pieces, and run
//! decompositions.

use std::fmt;

use crate::error::{Error, Result};
use crate::inversion::{Inversion, InversionKind, RunAnalysis};
use crate::period::{has_dividing_period, smallest_period, PeriodBound};
use crate::run::{LocationSet, Run};
use crate::word::Word;

/// A maximal interval of locations covered by overlapping inversions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageClass {
    /// First and last location index of the class.
    pub first: usize,
    pub last: usize,
    /// Overlapping inversions from `first` to `last`, each reaching further.
    pub chain: Vec<Inversion>,
    /// Location indices of inversion anchors inside the class.
    pub anchors: Vec<usize>,
    /// Their positions, sorted and deduplicated.
    pub anchor_positions: Vec<usize>,
}

/// Classes of the relation "covered by the same inversion", excluding
/// singletons, in run order.
pub fn coverage_classes(analysis: &RunAnalysis<'_>) -> Vec<CoverageClass> {
    let an = |i: usize| analysis.anchored[i].anchor_index;
    let mut invs = analysis.anchor_pairs(InversionKind::Inversion, None);
    invs.sort_by_key(|v| (an(v.first), std::cmp::Reverse(an(v.second))));
    let mut classes: Vec<CoverageClass> = Vec::new();
    for v in invs {
        let (s, e) = (an(v.first), an(v.second));
        match classes.last_mut() {
            Some(c) if s <= c.last => {
                if e > c.last {
                    c.last = e;
                    c.chain.push(v);
                }
                c.anchors.extend([s, e]);
            }
            _ => classes.push(CoverageClass {
                first: s,
                last: e,
                chain: vec![v],
                anchors: vec![s, e],
                anchor_positions: Vec::new(),
            }),
        }
    }
    for c in &mut classes {
        c.anchors.sort_unstable();
        c.anchors.dedup();
        c.anchor_positions = c
            .anchors
            .iter()
            .map(|&i| analysis.run.location(i).x)
            .collect();
        c.anchor_positions.sort_unstable();
        c.anchor_positions.dedup();
        c.chain = greedy_chain(analysis, c);
    }
    classes
}

/// Rebuilds the chain so that every member starts inside the previous one and
/// reaches as far as possible.
fn greedy_chain(analysis: &RunAnalysis<'_>, c: &CoverageClass) -> Vec<Inversion> {
    let an = |i: usize| analysis.anchored[i].anchor_index;
    let members = &c.chain;
    let mut chain: Vec<Inversion> = Vec::new();
    let mut reach = c.first;
    while reach < c.last {
        let best = members
            .iter()
            .filter(|v| {
                an(v.first) <= reach
                    && (chain.is_empty() || an(v.first) >= an(chain.last().unwrap().first))
            })
            .max_by_key(|v| an(v.second));
        match best {
            Some(v) if an(v.second) > reach => {
                reach = an(v.second);
                chain.push(*v);
            }
            _ => break,
        }
    }
    chain
}

/// `[ℓ1, ℓ2]` for a class: `ℓ1` is the latest location at or before the
/// class start lying at the leftmost anchor position, `ℓ2` the earliest one at
/// or after the class end lying at the rightmost anchor position.
pub fn block_interval(run: &Run, c: &CoverageClass) -> (usize, usize) {
    let lo = c.anchor_positions[0];
    let hi = *c.anchor_positions.last().unwrap();
    let start = (0..=c.first)
        .rev()
        .find(|&i| run.location(i).x == lo)
        .expect("class start is an anchor");
    let end = (c.last..run.num_locations())
        .find(|&i| run.location(i).x == hi)
        .expect("class end is an anchor");
    (start, end)
}

/// Almost-periodic split of a block's output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockData {
    pub prefix: Word,
    pub middle: Word,
    pub suffix: Word,
    /// Least period of `middle`, absent when it is empty.
    pub period: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceKind {
    /// Witness locations, one per position from the start to the end position.
    Diagonal {
        witness: Vec<usize>,
    },
    Block(BlockData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub start: usize,
    pub end: usize,
    pub kind: PieceKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    pub fn render(&self, run: &Run) -> String {
        let mut s = String::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let kind = match &p.kind {
                PieceKind::Diagonal { .. } => "diagonal".to_string(),
                PieceKind::Block(b) => match b.period {
                    Some(q) => format!("block period={q}"),
                    None => "block".to_string(),
                },
            };
            s.push_str(&format!(
                "piece {i}: {}..{} {kind}\n",
                run.location(p.start),
                run.location(p.end)
            ));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Decomposed(Decomposition),
    /// The run has an unsafe inversion, so no decomposition is attempted.
    Unsafe(Inversion),
}

/// Why a piece is not a diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalFailure {
    pub x: usize,
}

impl fmt::Display for DiagonalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no admissible location at position {}", self.x)
    }
}

fn within(bound: PeriodBound, run: &Run, z: LocationSet) -> bool {
    match bound {
        PeriodBound::Symbolic => true,
        PeriodBound::Finite(b) => run.subrun_output(&z).len() <= b,
    }
}

/// Searches a monotone witness map for `ρ[start, end]`, choosing at each
/// position the earliest admissible location after the previous choice.
pub fn is_diagonal(
    run: &Run,
    start: usize,
    end: usize,
    bound: PeriodBound,
) -> std::result::Result<Vec<usize>, DiagonalFailure> {
    let (x1, x2) = (run.location(start).x, run.location(end).x);
    if start > end || x1 > x2 {
        return Err(DiagonalFailure { x: x1 });
    }
    let omega = run.omega();
    let mut prev = start;
    let mut witness = Vec::with_capacity(x2 - x1 + 1);
    for x in x1..=x2 {
        let pick = (0..run.height(x)).map(|y| run.at(x, y)).find(|&i| {
            prev <= i
                && i <= end
                && within(bound, run, LocationSet::new(i, end, 0, x))
                && within(bound, run, LocationSet::new(start, i, x, omega))
        });
        match pick {
            Some(i) => {
                witness.push(i);
                prev = i;
            }
            None => return Err(DiagonalFailure { x }),
        }
    }
    Ok(witness)
}

/// Checks that `witness` is a monotone witness map for `ρ[start, end]`.
pub fn check_diagonal_witness(
    run: &Run,
    start: usize,
    end: usize,
    witness: &[usize],
    bound: PeriodBound,
) -> bool {
    let (x1, x2) = (run.location(start).x, run.location(end).x);
    if start > end || x1 > x2 || witness.len() != x2 - x1 + 1 {
        return false;
    }
    let omega = run.omega();
    let mut prev = start;
    witness.iter().enumerate().all(|(k, &i)| {
        let ok = i < run.num_locations()
            && run.location(i).x == x1 + k
            && prev <= i
            && i <= end
            && within(bound, run, LocationSet::new(i, end, 0, x1 + k))
            && within(bound, run, LocationSet::new(start, i, x1 + k, omega));
        prev = i;
        ok
    })
}

/// Checks the block conditions for `ρ[start, end]` and returns the canonical
/// almost-periodic split: longest periodic middle, then shortest prefix.
pub fn is_block(
    run: &Run,
    start: usize,
    end: usize,
    bound: PeriodBound,
) -> std::result::Result<BlockData, String> {
    let (x1, x2) = (run.location(start).x, run.location(end).x);
    if start > end || x1 > x2 {
        return Err("piece runs backwards".into());
    }
    let w = run.output_between(start, end);
    let b = match bound {
        PeriodBound::Symbolic => {
            return Ok(BlockData {
                prefix: Vec::new(),
                middle: w.to_vec(),
                suffix: Vec::new(),
                period: smallest_period(w).ok(),
            });
        }
        PeriodBound::Finite(b) => b,
    };
    if !within(bound, run, LocationSet::new(start, end, 0, x1)) {
        return Err("output left of the block is too long".into());
    }
    if !within(bound, run, LocationSet::new(start, end, x2, run.omega())) {
        return Err("output right of the block is too long".into());
    }
    let n = w.len();
    for len in (0..=n).rev() {
        for a in 0..=(n - len).min(b) {
            if n - a - len > b {
                continue;
            }
            let middle = &w[a..a + len];
            let period = smallest_period(middle).ok();
            if period.is_none_or(|p| p <= b) {
                return Ok(BlockData {
                    prefix: w[..a].to_vec(),
                    middle: middle.to_vec(),
                    suffix: w[a + len..].to_vec(),
                    period,
                });
            }
        }
    }
    Err("output is not almost periodic".into())
}

/// Builds a decomposition: blocks from coverage classes, diagonals in the
/// gaps. Runs with an unsafe inversion yield [`Outcome::Unsafe`].
pub fn build_decomposition(analysis: &RunAnalysis<'_>, bound: PeriodBound) -> Result<Outcome> {
    if let Some(inv) = analysis.first_unsafe(bound) {
        return Ok(Outcome::Unsafe(inv));
    }
    let run = analysis.run;
    let mut pieces = Vec::new();
    let mut cur = 0;
    for c in coverage_classes(analysis) {
        let (s, e) = block_interval(run, &c);
        if s < cur {
            return Err(Error::InternalInconsistency(format!(
                "blocks overlap at {}",
                run.location(s)
            )));
        }
        if s > cur {
            pieces.push(diagonal_piece(run, cur, s, bound)?);
        }
        let data = is_block(run, s, e, bound).map_err(|m| {
            Error::InternalInconsistency(format!(
                "bounding box {}..{} is not a block: {m}",
                run.location(s),
                run.location(e)
            ))
        })?;
        pieces.push(Piece {
            start: s,
            end: e,
            kind: PieceKind::Block(data),
        });
        cur = e;
    }
    if cur < run.last_index() {
        pieces.push(diagonal_piece(run, cur, run.last_index(), bound)?);
    }
    Ok(Outcome::Decomposed(Decomposition { pieces }))
}

fn diagonal_piece(run: &Run, s: usize, e: usize, bound: PeriodBound) -> Result<Piece> {
    let witness = is_diagonal(run, s, e, bound).map_err(|f| {
        Error::InternalInconsistency(format!(
            "gap {}..{} is not a diagonal: {f}",
            run.location(s),
            run.location(e)
        ))
    })?;
    Ok(Piece {
        start: s,
        end: e,
        kind: PieceKind::Diagonal { witness },
    })
}

/// Re-verifies tiling, position order and every piece predicate.
///
/// Boundary positions never decrease; they strictly increase across
/// diagonals, while a block may start and end at one position.
pub fn validate_decomposition(run: &Run, d: &Decomposition, bound: PeriodBound) -> bool {
    let Some(first) = d.pieces.first() else {
        return false;
    };
    if first.start != 0 || d.pieces.last().unwrap().end != run.last_index() {
        return false;
    }
    if d.pieces.windows(2).any(|w| w[0].end != w[1].start) {
        return false;
    }
    d.pieces.iter().all(|p| {
        if p.start >= p.end || p.end > run.last_index() {
            return false;
        }
        let (x1, x2) = (run.location(p.start).x, run.location(p.end).x);
        match &p.kind {
            PieceKind::Diagonal { witness } => {
                x1 < x2 && check_diagonal_witness(run, p.start, p.end, witness, bound)
            }
            PieceKind::Block(data) => {
                x1 <= x2 && is_block(run, p.start, p.end, bound).is_ok_and(|canon| canon == *data)
            }
        }
    })
}

/// The chain property behind block periodicity: the class output followed by
/// the last chain member's second trace has a period dividing that trace's
/// length.
pub fn class_is_periodic(analysis: &RunAnalysis<'_>, c: &CoverageClass) -> bool {
    let Some(last) = c.chain.last() else {
        return true;
    };
    let tr = &analysis.anchored[last.second].trace_output;
    let mut w = analysis.run.output_between(c.first, c.last).to_vec();
    w.extend_from_slice(tr);
    has_dividing_period(&w, tr.len(), tr.len(), PeriodBound::Symbolic).is_some()
}
