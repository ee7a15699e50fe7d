//! Bounded definability checks for one-way and sweeping transducers.
//!
//! Inputs are scanned by length, then lexicographically, then by run index;
//! the first counterexample found is therefore canonical. A clean scan only
//! says that no counterexample exists up to the bound, never that the
//! transducer is definable.

use std::fmt;

use num_bigint::BigUint;

use crate::certificate::{Certificate, Mode};
use crate::constants::sweeping_pass_bound;
use crate::error::{Error, Result};
use crate::inversion::{Inversion, InversionKind, RunAnalysis};
use crate::period::PeriodBound;
use crate::run::{enumerate_runs, Caps};
use crate::transducer::Transducer;
use crate::word::words_up_to;

/// Number of passes for the sweeping check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PassBound {
    Finite(usize),
    /// The pass count sufficient for every sweeping-definable transducer,
    /// `2·h_max·(2^(3·e_max)+1)`.
    Symbolic,
}

impl fmt::Display for PassBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PassBound::Finite(k) => write!(f, "{k}"),
            PassBound::Symbolic => write!(f, "symbolic"),
        }
    }
}

impl std::str::FromStr for PassBound {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "symbolic" {
            return Ok(PassBound::Symbolic);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("the number of passes must be positive".into()),
            Ok(k) => Ok(PassBound::Finite(k)),
            Err(_) => Err(format!(
                "expected a positive number or `symbolic`, got `{s}`"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub inputs: usize,
    pub runs: usize,
    /// Anchor pairs in inversion position (co-inversions included for
    /// sweeping checks).
    pub inversions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Refuted,
    NoCounterexampleUpTo(usize),
    /// The requested pass count is beyond what can be enumerated.
    BoundExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
    /// For symbolic pass bounds: the check run at the pass cap instead.
    pub proxy: Option<Box<Verdict>>,
}

impl Verdict {
    pub fn summary(&self) -> String {
        match &self.kind {
            VerdictKind::Refuted => {
                let c = self
                    .certificate
                    .as_ref()
                    .expect("refutations carry a certificate");
                format!(
                    "refuted on input \"{}\" (run {})",
                    c.input_text, c.run_index
                )
            }
            VerdictKind::NoCounterexampleUpTo(n) => format!("no counterexample up to {n}"),
            VerdictKind::BoundExceeded => "bound exceeded".to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub max_len: usize,
    pub period_bound: PeriodBound,
    pub caps: Caps,
    /// Largest pass count searched when the requested one is symbolic.
    pub pass_cap: usize,
}

impl DecideOptions {
    pub fn new(max_len: usize) -> DecideOptions {
        DecideOptions {
            max_len,
            period_bound: PeriodBound::Symbolic,
            caps: Caps::default(),
            pass_cap: 4,
        }
    }
}

fn scan<F>(t: &Transducer, opts: &DecideOptions, mode: Mode, mut find: F) -> Result<Verdict>
where
    F: FnMut(&RunAnalysis<'_>, &mut SearchStats) -> Option<Vec<Inversion>>,
{
    let mut stats = SearchStats::default();
    for u in words_up_to(t.input_alphabet().len(), opts.max_len) {
        stats.inputs += 1;
        let runs = enumerate_runs(t, &u, &opts.caps)?;
        if let Some(first) = runs.first() {
            if let Some(other) = runs.iter().find(|r| r.output() != first.output()) {
                return Err(Error::NotFunctional {
                    input: t.render_input(&u),
                    first: t.render_output(first.output()),
                    second: t.render_output(other.output()),
                });
            }
        }
        for (ri, run) in runs.iter().enumerate() {
            stats.runs += 1;
            let analysis = RunAnalysis::new(run);
            if let Some(chain) = find(&analysis, &mut stats) {
                let cert = Certificate::build(t, mode, opts.period_bound, ri, &analysis, &chain);
                return Ok(Verdict {
                    kind: VerdictKind::Refuted,
                    certificate: Some(cert),
                    stats,
                    proxy: None,
                });
            }
        }
    }
    Ok(Verdict {
        kind: VerdictKind::NoCounterexampleUpTo(opts.max_len),
        certificate: None,
        stats,
        proxy: None,
    })
}

fn count_pairs(a: &RunAnalysis<'_>, kind: InversionKind) -> usize {
    let anchors: Vec<(usize, usize)> = {
        let mut v: Vec<(usize, usize)> = a
            .anchored
            .iter()
            .map(|c| (c.anchor_index, c.anchor.x))
            .collect();
        v.dedup();
        v
    };
    let mut n = 0;
    for (i, &(_, xa)) in anchors.iter().enumerate() {
        n += anchors[i + 1..]
            .iter()
            .filter(|&&(_, xb)| kind.positions_ok(xa, xb))
            .count();
    }
    n
}

/// Searches inputs of length at most `max_len` for a run with an unsafe
/// inversion.
pub fn decide_oneway_bounded(t: &Transducer, opts: &DecideOptions) -> Result<Verdict> {
    let bound = opts.period_bound;
    scan(t, opts, Mode::OneWay, |a, stats| {
        stats.inversions += count_pairs(a, InversionKind::Inversion);
        a.first_unsafe(bound).map(|v| vec![v])
    })
}

/// Searches for a run with an unsafe `k`-inversion.
///
/// A symbolic pass bound is never enumerated: the verdict is
/// [`VerdictKind::BoundExceeded`] and carries the check at `opts.pass_cap`
/// as a proxy.
pub fn decide_sweeping_bounded(
    t: &Transducer,
    passes: PassBound,
    opts: &DecideOptions,
) -> Result<Verdict> {
    let k = match passes {
        PassBound::Finite(0) => {
            return Err(Error::InvalidArgument(
                "the number of passes must be positive".into(),
            ))
        }
        PassBound::Finite(k) => k,
        PassBound::Symbolic => {
            let proxy = decide_sweeping_bounded(t, PassBound::Finite(opts.pass_cap.max(1)), opts)?;
            return Ok(Verdict {
                kind: VerdictKind::BoundExceeded,
                certificate: None,
                stats: proxy.stats,
                proxy: Some(Box::new(proxy)),
            });
        }
    };
    let bound = opts.period_bound;
    scan(t, opts, Mode::Sweeping(k), |a, stats| {
        stats.inversions += count_pairs(a, InversionKind::Inversion);
        if k > 1 {
            stats.inversions += count_pairs(a, InversionKind::CoInversion);
        }
        a.unsafe_k_inversion(k, bound)
    })
}

/// The pass count sufficient for sweeping definability, as `(2·h_max, 3·e_max)`
/// meaning `2·h_max·(2^(3·e_max)+1)`.
pub fn symbolic_passes(t: &Transducer) -> (u64, BigUint) {
    sweeping_pass_bound(t.num_states() as u64)
}
