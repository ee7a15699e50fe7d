//! Refutation certificates: self-contained text documents that let a
//! verifier replay a counterexample without trusting the search.
//!
//! ```text
//! untwist-certificate v1
//! transducer T_COPY_AB sha256 <hex>
//! mode oneway
//! period-bound symbolic
//! input "ab"
//! run-index 0
//! run-steps 9
//! step 0: ...
//! output: "abab"
//! members 1
//! member 0 inversion
//! first loop [1,2] levels 0,1 anchor (1,0) at 3 trace "a"
//! second loop [1,2] levels 2,3 anchor (2,2) at 7 trace "b"
//! word "aaba" len1 1 len2 1 gcd 1
//! mismatch 1 0
//! end
//! ```
//!
//! A mismatch line `mismatch p i` states that `word[i] != word[i + p]`; there
//! is one per divisor of the gcd admitted by the period bound.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::inversion::{is_k_inversion, Inversion, InversionKind, RunAnalysis};
use crate::period::PeriodBound;
use crate::run::{enumerate_runs, Caps};
use crate::transducer::{serialize_transducer, Transducer};

pub const HEADER: &str = "untwist-certificate v1";

/// The check a certificate refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    OneWay,
    /// Sweeping with the given number of passes.
    Sweeping(usize),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::OneWay => write!(f, "oneway"),
            Mode::Sweeping(k) => write!(f, "sweeping {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    pub period_bound: PeriodBound,
    pub input_text: String,
    pub run_index: usize,
    pub text: String,
}

/// Lowercase hex SHA-256 of the canonical serialization of `t`.
pub fn transducer_digest(t: &Transducer) -> String {
    hex::encode(Sha256::digest(serialize_transducer(t).as_bytes()))
}

fn member_line(a: &RunAnalysis<'_>, role: &str, i: usize, t: &Transducer) -> String {
    let an = &a.anchored[i];
    let l = a.loop_of(i);
    let c = a.component_of(i);
    let levels: Vec<String> = c.levels.iter().map(|v| v.to_string()).collect();
    format!(
        "{role} loop [{},{}] levels {} anchor {} at {} trace \"{}\"\n",
        l.x1,
        l.x2,
        levels.join(","),
        an.anchor,
        an.anchor_index,
        t.render_output(&an.trace_output)
    )
}

impl Certificate {
    /// Renders the certificate for `chain`, a sequence of unsafe members on
    /// run `run_index` of the analysed input.
    pub fn build(
        t: &Transducer,
        mode: Mode,
        period_bound: PeriodBound,
        run_index: usize,
        a: &RunAnalysis<'_>,
        chain: &[Inversion],
    ) -> Certificate {
        let run = a.run;
        let input_text = t.render_input(run.input().raw());
        let mut s = String::new();
        s.push_str(HEADER);
        s.push('\n');
        s.push_str(&format!(
            "transducer {} sha256 {}\n",
            t.name(),
            transducer_digest(t)
        ));
        s.push_str(&format!("mode {mode}\n"));
        s.push_str(&format!("period-bound {period_bound}\n"));
        s.push_str(&format!("input \"{input_text}\"\n"));
        s.push_str(&format!("run-index {run_index}\n"));
        s.push_str(&format!("run-steps {}\n", run.steps().len()));
        s.push_str(&run.dump(t));
        s.push_str(&format!("members {}\n", chain.len()));
        for (m, inv) in chain.iter().enumerate() {
            s.push_str(&format!("member {m} {}\n", inv.kind.name()));
            s.push_str(&member_line(a, "first", inv.first, t));
            s.push_str(&member_line(a, "second", inv.second, t));
            let r = a.period_report(inv, period_bound);
            s.push_str(&format!(
                "word \"{}\" len1 {} len2 {} gcd {}\n",
                t.render_output(&r.word),
                r.len1,
                r.len2,
                r.gcd
            ));
            for (p, i) in a.mismatches(inv, period_bound) {
                match i {
                    Some(i) => s.push_str(&format!("mismatch {p} {i}\n")),
                    None => s.push_str(&format!("period {p}\n")),
                }
            }
        }
        s.push_str("end\n");
        Certificate {
            mode,
            period_bound,
            input_text,
            run_index,
            text: s,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn field<'a>(line: Option<&'a str>, key: &str) -> Option<&'a str> {
    line?.strip_prefix(key)?.strip_prefix(' ')
}

fn quoted(s: &str) -> Option<&str> {
    s.strip_prefix('"')?.strip_suffix('"')
}

/// Finds the anchored component described by a `first`/`second` line.
fn resolve_member(a: &RunAnalysis<'_>, line: &str) -> Option<usize> {
    let rest = line.split_once(' ')?.1.strip_prefix("loop [")?;
    let (bounds, rest) = rest.split_once("] levels ")?;
    let (x1, x2) = bounds.split_once(',')?;
    let (x1, x2): (usize, usize) = (x1.parse().ok()?, x2.parse().ok()?);
    let levels_text = rest.split_once(' ')?.0;
    let levels: Vec<usize> = levels_text
        .split(',')
        .map(|v| v.parse().ok())
        .collect::<Option<_>>()?;
    (0..a.anchored.len()).find(|&i| {
        let l = a.loop_of(i);
        l.x1 == x1 && l.x2 == x2 && a.component_of(i).levels == levels
    })
}

/// Replays `text` against `t`: the transducer digest, the run, every member
/// (loops, components, anchors, traces, words), unsafety of every member, and
/// the mismatch table. The certificate must also be byte-identical to its
/// canonical rendering.
pub fn verify_certificate(t: &Transducer, text: &str) -> bool {
    verify(t, text).unwrap_or(false)
}

fn verify(t: &Transducer, text: &str) -> Option<bool> {
    let mut lines = text.lines();
    if lines.next()? != HEADER {
        return Some(false);
    }
    let header = field(lines.next(), "transducer")?;
    if header != format!("{} sha256 {}", t.name(), transducer_digest(t)) {
        return Some(false);
    }
    let mode = match field(lines.next(), "mode")? {
        "oneway" => Mode::OneWay,
        m => Mode::Sweeping(
            m.strip_prefix("sweeping ")?
                .parse()
                .ok()
                .filter(|&k| k > 0)?,
        ),
    };
    let period_bound: PeriodBound = field(lines.next(), "period-bound")?.parse().ok()?;
    let input = t.parse_input(quoted(field(lines.next(), "input")?)?).ok()?;
    let run_index: usize = field(lines.next(), "run-index")?.parse().ok()?;
    let steps: usize = field(lines.next(), "run-steps")?.parse().ok()?;

    let runs = enumerate_runs(t, &input, &Caps::default()).ok()?;
    let run = runs.get(run_index)?;
    if run.steps().len() != steps {
        return Some(false);
    }
    let a = RunAnalysis::new(run);
    // Skip the run dump; the re-rendering below compares it byte for byte.
    let mut lines = lines.skip(steps + 1);
    let count: usize = field(lines.next(), "members")?.parse().ok()?;
    let expected = match mode {
        Mode::OneWay => 1,
        Mode::Sweeping(k) => k,
    };
    if count != expected {
        return Some(false);
    }
    let rest: Vec<&str> = lines.collect();
    let mut chain = Vec::with_capacity(count);
    let mut at = 0;
    for m in 0..count {
        let kind = match field(rest.get(at).copied(), &format!("member {m}"))? {
            "inversion" => InversionKind::Inversion,
            "co-inversion" => InversionKind::CoInversion,
            _ => return Some(false),
        };
        let first = resolve_member(&a, rest.get(at + 1)?)?;
        let second = resolve_member(&a, rest.get(at + 2)?)?;
        chain.push(Inversion {
            first,
            second,
            kind,
        });
        at += 3;
        while rest
            .get(at)
            .is_some_and(|l| !l.starts_with("member ") && *l != "end")
        {
            at += 1;
        }
    }
    if !is_k_inversion(&a, &chain)
        || chain
            .iter()
            .any(|inv| a.period_report(inv, period_bound).safe)
    {
        return Some(false);
    }
    let rebuilt = Certificate::build(t, mode, period_bound, run_index, &a, &chain);
    Some(rebuilt.text == text)
}
