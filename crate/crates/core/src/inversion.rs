//! Inversions, co-inversions, the periodicity predicate on runs and
//! k-inversion safety.

use std::collections::HashMap;

use crate::loops::{components_of, enumerate_loops, Component, Loop};
use crate::period::{has_dividing_period, mismatch_table, PeriodBound};
use crate::run::{Location, Run};
use crate::word::{gcd, Word};

/// A component of an idempotent loop with nonempty trace output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchored {
    pub loop_index: usize,
    pub comp_index: usize,
    pub anchor: Location,
    pub anchor_index: usize,
    pub trace_output: Word,
}

/// Idempotent loops of a run, their components, and the productive anchored
/// components sorted by anchor, then loop, then lowest level.
pub struct RunAnalysis<'r> {
    pub run: &'r Run,
    pub loops: Vec<Loop>,
    pub components: Vec<Vec<Component>>,
    pub anchored: Vec<Anchored>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InversionKind {
    Inversion,
    CoInversion,
}

impl InversionKind {
    /// Position condition on the anchors `x1` (first) and `x2` (second).
    pub fn positions_ok(self, x1: usize, x2: usize) -> bool {
        match self {
            InversionKind::Inversion => x1 >= x2,
            InversionKind::CoInversion => x1 <= x2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InversionKind::Inversion => "inversion",
            InversionKind::CoInversion => "co-inversion",
        }
    }
}

/// Two anchored components, referenced by index into [`RunAnalysis::anchored`].
/// The first anchor strictly precedes the second in run order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inversion {
    pub first: usize,
    pub second: usize,
    pub kind: InversionKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub word: Word,
    pub len1: usize,
    pub len2: usize,
    pub gcd: usize,
    pub found_period: Option<usize>,
    pub safe: bool,
}

impl<'r> RunAnalysis<'r> {
    pub fn new(run: &'r Run) -> RunAnalysis<'r> {
        let loops = enumerate_loops(run, true);
        let components: Vec<Vec<Component>> = loops.iter().map(|l| components_of(run, l)).collect();
        let mut anchored = Vec::new();
        for (li, comps) in components.iter().enumerate() {
            for (ci, c) in comps.iter().enumerate() {
                let tr = c.trace_output(run);
                if !tr.is_empty() {
                    anchored.push(Anchored {
                        loop_index: li,
                        comp_index: ci,
                        anchor: c.anchor,
                        anchor_index: c.anchor_index,
                        trace_output: tr,
                    });
                }
            }
        }
        anchored.sort_by_key(|a| {
            let c = &components[a.loop_index][a.comp_index];
            (
                a.anchor_index,
                loops[a.loop_index].x1,
                loops[a.loop_index].x2,
                c.min_level(),
            )
        });
        RunAnalysis {
            run,
            loops,
            components,
            anchored,
        }
    }

    pub fn loop_of(&self, a: usize) -> &Loop {
        &self.loops[self.anchored[a].loop_index]
    }

    pub fn component_of(&self, a: usize) -> &Component {
        let an = &self.anchored[a];
        &self.components[an.loop_index][an.comp_index]
    }

    /// All inversions (or co-inversions) ordered by anchor pair, then by
    /// the two members.
    pub fn inversions(&self, kind: InversionKind) -> Vec<Inversion> {
        let mut out = Vec::new();
        for (i, a) in self.anchored.iter().enumerate() {
            for (j, b) in self.anchored.iter().enumerate().skip(i + 1) {
                if a.anchor_index < b.anchor_index && kind.positions_ok(a.anchor.x, b.anchor.x) {
                    out.push(Inversion {
                        first: i,
                        second: j,
                        kind,
                    });
                }
            }
        }
        out.sort_by_key(|v| {
            (
                self.anchored[v.first].anchor_index,
                self.anchored[v.second].anchor_index,
                v.first,
                v.second,
            )
        });
        out
    }

    /// `out(tr C1) · out(ρ[an C1, an C2]) · out(tr C2)`.
    pub fn word(&self, inv: &Inversion) -> Word {
        let (a, b) = (&self.anchored[inv.first], &self.anchored[inv.second]);
        let mut w = a.trace_output.clone();
        w.extend_from_slice(self.run.output_between(a.anchor_index, b.anchor_index));
        w.extend_from_slice(&b.trace_output);
        w
    }

    pub fn period_report(&self, inv: &Inversion, bound: PeriodBound) -> PeriodReport {
        let word = self.word(inv);
        let len1 = self.anchored[inv.first].trace_output.len();
        let len2 = self.anchored[inv.second].trace_output.len();
        let found_period = has_dividing_period(&word, len1, len2, bound);
        PeriodReport {
            word,
            len1,
            len2,
            gcd: gcd(len1, len2),
            found_period,
            safe: found_period.is_some(),
        }
    }

    pub fn mismatches(&self, inv: &Inversion, bound: PeriodBound) -> Vec<(usize, Option<usize>)> {
        let r = self.period_report(inv, bound);
        mismatch_table(&r.word, r.len1, r.len2, bound)
    }

    /// One inversion per anchor pair of the given kind: the least member pair,
    /// or with `bound` set, the least unsafe member pair (pairs without one
    /// are skipped). Ordered by anchor pair.
    pub fn anchor_pairs(&self, kind: InversionKind, bound: Option<PeriodBound>) -> Vec<Inversion> {
        // Group productive components by anchor, then by trace output.
        let mut anchors: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, a) in self.anchored.iter().enumerate() {
            match anchors.last_mut() {
                Some((idx, v)) if *idx == a.anchor_index => v.push(i),
                _ => anchors.push((a.anchor_index, vec![i])),
            }
        }
        let mut trace_ids: HashMap<&[usize], usize> = HashMap::new();
        let tid: Vec<usize> = self
            .anchored
            .iter()
            .map(|a| {
                let n = trace_ids.len();
                *trace_ids.entry(&a.trace_output).or_insert(n)
            })
            .collect();
        let mut buf = Vec::new();
        let mut out = Vec::new();
        for (p, (ia, ma)) in anchors.iter().enumerate() {
            let xa = self.anchored[ma[0]].anchor.x;
            for (ib, mb) in &anchors[p + 1..] {
                let xb = self.anchored[mb[0]].anchor.x;
                if !kind.positions_ok(xa, xb) {
                    continue;
                }
                let Some(bound) = bound else {
                    out.push(Inversion {
                        first: ma[0],
                        second: mb[0],
                        kind,
                    });
                    continue;
                };
                let middle = self.run.output_between(*ia, *ib);
                let mut cache: HashMap<(usize, usize), bool> = HashMap::new();
                'search: for &i in ma {
                    for &j in mb {
                        let bad = *cache.entry((tid[i], tid[j])).or_insert_with(|| {
                            let (t1, t2) = (
                                &self.anchored[i].trace_output,
                                &self.anchored[j].trace_output,
                            );
                            buf.clear();
                            buf.extend_from_slice(t1);
                            buf.extend_from_slice(middle);
                            buf.extend_from_slice(t2);
                            has_dividing_period(&buf, t1.len(), t2.len(), bound).is_none()
                        });
                        if bad {
                            out.push(Inversion {
                                first: i,
                                second: j,
                                kind,
                            });
                            break 'search;
                        }
                    }
                }
            }
        }
        out
    }

    /// Least unsafe member pair of every anchor pair that has one.
    pub fn unsafe_pairs(&self, kind: InversionKind, bound: PeriodBound) -> Vec<Inversion> {
        self.anchor_pairs(kind, Some(bound))
    }

    /// The first unsafe inversion in canonical order.
    pub fn first_unsafe(&self, bound: PeriodBound) -> Option<Inversion> {
        self.unsafe_pairs(InversionKind::Inversion, bound)
            .into_iter()
            .next()
    }

    /// A canonical unsafe `k`-inversion: members alternate inversion /
    /// co-inversion starting with an inversion, all unsafe, each member's
    /// second anchor at or before the next member's first anchor.
    pub fn unsafe_k_inversion(&self, k: usize, bound: PeriodBound) -> Option<Vec<Inversion>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let inv = self.unsafe_pairs(InversionKind::Inversion, bound);
        let co = if k > 1 {
            self.unsafe_pairs(InversionKind::CoInversion, bound)
        } else {
            Vec::new()
        };
        let an = |i: usize| self.anchored[i].anchor_index;
        let mut chain: Vec<Inversion> = Vec::new();
        let mut last_end: Option<usize> = None;
        for step in 0..k {
            let pool = if step % 2 == 0 { &inv } else { &co };
            // Earliest-ending admissible member keeps the most room for the rest.
            let pick = pool
                .iter()
                .filter(|v| last_end.is_none_or(|e| e <= an(v.first)))
                .min_by_key(|v| (an(v.second), an(v.first), v.first, v.second))?;
            last_end = Some(an(pick.second));
            chain.push(*pick);
        }
        Some(chain)
    }
}

/// All inversions (or co-inversions) of `run` with their analysis context.
pub fn enumerate_inversions(run: &Run, kind: InversionKind) -> (RunAnalysis<'_>, Vec<Inversion>) {
    let a = RunAnalysis::new(run);
    let v = a.inversions(kind);
    (a, v)
}

/// One report per inversion; the run satisfies the predicate iff every
/// report is safe.
pub fn check_p2<'r>(
    analysis: &RunAnalysis<'r>,
    bound: PeriodBound,
) -> Vec<(Inversion, PeriodReport)> {
    analysis
        .inversions(InversionKind::Inversion)
        .into_iter()
        .map(|inv| {
            let r = analysis.period_report(&inv, bound);
            (inv, r)
        })
        .collect()
}

/// Whether some member of a k-inversion is safe.
pub fn is_safe_chain(analysis: &RunAnalysis<'_>, chain: &[Inversion], bound: PeriodBound) -> bool {
    chain
        .iter()
        .any(|inv| analysis.period_report(inv, bound).safe)
}

/// Whether `chain` is a well-formed k-inversion.
pub fn is_k_inversion(analysis: &RunAnalysis<'_>, chain: &[Inversion]) -> bool {
    let an = |i: usize| &analysis.anchored[i];
    chain.iter().enumerate().all(|(i, v)| {
        let kind = if i % 2 == 0 {
            InversionKind::Inversion
        } else {
            InversionKind::CoInversion
        };
        an(v.first).anchor_index < an(v.second).anchor_index
            && kind.positions_ok(an(v.first).anchor.x, an(v.second).anchor.x)
    }) && chain
        .windows(2)
        .all(|w| an(w[0].second).anchor_index <= an(w[1].first).anchor_index)
}

/// Every k-inversion of a run, for small instances.
pub fn enumerate_k_inversions(
    analysis: &RunAnalysis<'_>,
    k: usize,
    cap: usize,
) -> Option<Vec<Vec<Inversion>>> {
    let inv = analysis.inversions(InversionKind::Inversion);
    let co = analysis.inversions(InversionKind::CoInversion);
    let mut out: Vec<Vec<Inversion>> = vec![Vec::new()];
    for step in 0..k {
        let pool = if step % 2 == 0 { &inv } else { &co };
        let mut next = Vec::new();
        for chain in &out {
            for v in pool {
                let ok = chain.last().is_none_or(|l| {
                    analysis.anchored[l.second].anchor_index
                        <= analysis.anchored[v.first].anchor_index
                });
                if ok {
                    let mut c = chain.clone();
                    c.push(*v);
                    next.push(c);
                    if next.len() > cap {
                        return None;
                    }
                }
            }
        }
        out = next;
    }
    Some(out)
}
