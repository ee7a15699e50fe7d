//! Periods of words and the Fine–Wilf periodicity lemma.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::gcd;

/// Upper bound on admissible periods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PeriodBound {
    /// The astronomically large master constant; every period a word can
    /// have at desk scale is below it.
    #[default]
    Symbolic,
    Finite(usize),
}

impl PeriodBound {
    pub fn admits(self, n: usize) -> bool {
        match self {
            PeriodBound::Symbolic => true,
            PeriodBound::Finite(b) => n <= b,
        }
    }
}

impl fmt::Display for PeriodBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodBound::Symbolic => write!(f, "symbolic"),
            PeriodBound::Finite(b) => write!(f, "{b}"),
        }
    }
}

impl std::str::FromStr for PeriodBound {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "symbolic" {
            return Ok(PeriodBound::Symbolic);
        }
        s.parse::<usize>()
            .map(PeriodBound::Finite)
            .map_err(|_| format!("expected a number or `symbolic`, got `{s}`"))
    }
}

/// Least `i` with `w[i] != w[i + p]`, if any.
pub fn first_mismatch<T: PartialEq>(w: &[T], p: usize) -> Option<usize> {
    (0..w.len().saturating_sub(p)).find(|&i| w[i] != w[i + p])
}

pub fn is_period<T: PartialEq>(w: &[T], p: usize) -> bool {
    first_mismatch(w, p).is_none()
}

/// Least period of a nonempty word, via the border (failure) function.
pub fn smallest_period<T: PartialEq>(w: &[T]) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::InvalidArgument(
            "the empty word has no least period".into(),
        ));
    }
    let n = w.len();
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    Ok(n - fail[n])
}

/// Divisors of `g` in increasing order.
pub fn divisors(g: usize) -> Vec<usize> {
    (1..=g).filter(|d| g.is_multiple_of(*d)).collect()
}

/// Smallest divisor `p` of `gcd(len1, len2)` admitted by `bound` that is a
/// period of `w`.
pub fn has_dividing_period<T: PartialEq>(
    w: &[T],
    len1: usize,
    len2: usize,
    bound: PeriodBound,
) -> Option<usize> {
    divisors(gcd(len1, len2))
        .into_iter()
        .filter(|&p| bound.admits(p))
        .find(|&p| is_period(w, p))
}

/// For every admitted divisor of `gcd(len1, len2)`, the least mismatch index
/// (`None` when the divisor is a period).
pub fn mismatch_table<T: PartialEq>(
    w: &[T],
    len1: usize,
    len2: usize,
    bound: PeriodBound,
) -> Vec<(usize, Option<usize>)> {
    divisors(gcd(len1, len2))
        .into_iter()
        .filter(|&p| bound.admits(p))
        .map(|p| (p, first_mismatch(w, p)))
        .collect()
}

/// Where the common factor `w` sits: `w = w1[start1..start1+len] = w2[start2..start2+len]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alignment {
    pub start1: usize,
    pub start2: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FineWilfError {
    /// The alignment does not describe a common factor.
    BadAlignment,
    NotPeriodic {
        word: usize,
        period: usize,
    },
    TooShort {
        len: usize,
        needed: usize,
    },
}

/// Whether `w1`, `w2` and `w1[..start1]·w·w2[start2+len..]` all have period
/// `gcd(p1, p2)`.
pub fn fine_wilf_conclusion<T: PartialEq + Clone>(
    w1: &[T],
    p1: usize,
    w2: &[T],
    p2: usize,
    a: Alignment,
) -> bool {
    let g = gcd(p1, p2);
    let mut w3 = w1[..a.start1 + a.len].to_vec();
    w3.extend_from_slice(&w2[a.start2 + a.len..]);
    is_period(w1, g) && is_period(w2, g) && is_period(&w3, g)
}

/// The Fine–Wilf lemma as a checkable statement: hypothesis failures are
/// reported as errors, distinct from a false conclusion.
pub fn fine_wilf_check<T: PartialEq + Clone>(
    w1: &[T],
    p1: usize,
    w2: &[T],
    p2: usize,
    a: Alignment,
) -> std::result::Result<bool, FineWilfError> {
    if p1 == 0 || p2 == 0 || a.start1 + a.len > w1.len() || a.start2 + a.len > w2.len() {
        return Err(FineWilfError::BadAlignment);
    }
    if w1[a.start1..a.start1 + a.len] != w2[a.start2..a.start2 + a.len] {
        return Err(FineWilfError::BadAlignment);
    }
    if !is_period(w1, p1) {
        return Err(FineWilfError::NotPeriodic {
            word: 1,
            period: p1,
        });
    }
    if !is_period(w2, p2) {
        return Err(FineWilfError::NotPeriodic {
            word: 2,
            period: p2,
        });
    }
    let needed = p1 + p2 - gcd(p1, p2);
    if a.len < needed {
        return Err(FineWilfError::TooShort { len: a.len, needed });
    }
    Ok(fine_wilf_conclusion(w1, p1, w2, p2, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods() {
        assert_eq!(smallest_period(b"abcabcab").unwrap(), 3);
        assert_eq!(smallest_period(b"aaaa").unwrap(), 1);
        assert_eq!(smallest_period(b"abca").unwrap(), 3);
        assert!(smallest_period::<u8>(&[]).is_err());
    }

    #[test]
    fn dividing() {
        assert_eq!(
            has_dividing_period(b"ababab", 2, 4, PeriodBound::Symbolic),
            Some(2)
        );
        assert_eq!(
            has_dividing_period(b"abcab", 2, 3, PeriodBound::Symbolic),
            None
        );
        assert_eq!(
            has_dividing_period::<u8>(&[], 3, 6, PeriodBound::Symbolic),
            Some(1)
        );
        assert_eq!(
            has_dividing_period(b"ababab", 2, 4, PeriodBound::Finite(1)),
            None
        );
    }
}
