//! Bounded functionality check.

use crate::error::Result;
use crate::run::{enumerate_runs, Caps};
use crate::transducer::Transducer;
use crate::word::{words_up_to, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functionality {
    FunctionalUpTo(usize),
    Witness {
        input: Word,
        first: Word,
        second: Word,
    },
}

/// Looks for an input of length at most `n` with two runs producing different
/// outputs; inputs are scanned shortest first, then lexicographically.
pub fn check_functional_bounded(t: &Transducer, n: usize, caps: &Caps) -> Result<Functionality> {
    for u in words_up_to(t.input_alphabet().len(), n) {
        let runs = enumerate_runs(t, &u, caps)?;
        if let Some(first) = runs.first() {
            if let Some(other) = runs.iter().find(|r| r.output() != first.output()) {
                return Ok(Functionality::Witness {
                    input: u,
                    first: first.output().to_vec(),
                    second: other.output().to_vec(),
                });
            }
        }
    }
    Ok(Functionality::FunctionalUpTo(n))
}
