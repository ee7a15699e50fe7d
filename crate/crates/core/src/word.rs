//! Alphabets, words and small arithmetic helpers.

use std::fmt;

/// A word is a sequence of symbol indices into some [`Alphabet`].
pub type Word = Vec<usize>;

/// Reserved token for the left end-marker.
pub const BEGIN_TOKEN: &str = "|-";
/// Reserved token for the right end-marker.
pub const END_TOKEN: &str = "-|";

/// A sorted, duplicate-free list of symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet; symbols are sorted. Returns the first duplicate on failure.
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Alphabet, String> {
        let mut v: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
        v.sort();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(w[0].clone());
            }
        }
        Ok(Alphabet { symbols: v })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.symbols.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Renders a word: plain concatenation when every symbol is one character,
    /// otherwise symbols joined by commas.
    pub fn render(&self, w: &[usize]) -> String {
        let parts: Vec<&str> = w.iter().map(|&i| self.symbols[i].as_str()).collect();
        if self.single_chars() {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Inverse of [`Alphabet::render`].
    pub fn parse_word(&self, text: &str) -> Result<Word, String> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let lookup = |tok: &str| self.index(tok).ok_or_else(|| tok.to_string());
        if text.contains(',') {
            return text.split(',').map(lookup).collect();
        }
        if let Some(i) = self.index(text) {
            if !self.single_chars() || text.chars().count() == 1 {
                return Ok(vec![i]);
            }
        }
        let mut buf = [0u8; 4];
        text.chars()
            .map(|c| lookup(c.encode_utf8(&mut buf)))
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbols.join(" "))
    }
}

/// All words over `k` letters with length at most `n`, shortest first and
/// lexicographic within a length.
pub fn words_up_to(k: usize, n: usize) -> impl Iterator<Item = Word> {
    (0..=n).flat_map(move |len| words_of_length(k, len))
}

/// All words of length `len` over `k` letters in lexicographic order.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Word> {
    let mut next = if len == 0 || k > 0 {
        Some(vec![0; len])
    } else {
        None
    };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = len;
        while i > 0 {
            i -= 1;
            if succ[i] + 1 < k {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    })
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
