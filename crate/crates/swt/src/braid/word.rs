use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::BraidError;

/// A braid generator letter `σ_i^{±1}`, stored as a nonzero signed index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: u32, positive: bool) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        let i = index as i32;
        Letter(if positive { i } else { -i })
    }

    pub fn pos(index: u32) -> Self {
        Self::new(index, true)
    }

    pub fn neg(index: u32) -> Self {
        Self::new(index, false)
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// +1 or -1.
    pub fn exponent(self) -> i64 {
        self.0.signum() as i64
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub(crate) fn shifted_down(self, by: u32) -> Self {
        Letter::new(self.index() - by, self.is_positive())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A braid word on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for (position, l) in letters.iter().enumerate() {
            if l.index() == 0 || l.index() >= strands {
                return Err(BraidError::IndexOutOfRange {
                    position,
                    index: l.index(),
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed integers, taking `1 + max index` strands
    /// when `strands` is `None`.
    pub fn from_signed(strands: Option<u32>, letters: &[i32]) -> Result<Self, BraidError> {
        let mut out = Vec::with_capacity(letters.len());
        for (position, &x) in letters.iter().enumerate() {
            if x == 0 {
                return Err(BraidError::ZeroLetter { position });
            }
            out.push(Letter(x));
        }
        let n = strands.unwrap_or_else(|| 1 + out.iter().map(|l| l.index()).max().unwrap_or(0));
        BraidWord::new(n, out)
    }

    /// Parses whitespace-separated signed integers, e.g. `"1 1 -2"`.
    pub fn parse(text: &str, strands: Option<u32>) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let x: i32 = tok
                .parse()
                .map_err(|_| BraidError::BadToken(tok.to_string()))?;
            letters.push(x);
        }
        Self::from_signed(strands, &letters)
    }

    pub fn empty(strands: u32) -> Self {
        BraidWord::new(strands, Vec::new()).expect("strands >= 1")
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    /// Algebraic exponent sum `e`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent()).sum()
    }

    /// Per-generator exponent sums; entry `k` is `e_{k+1}`.
    pub fn generator_exponents(&self) -> Vec<i64> {
        let mut e = vec![0i64; self.strands.saturating_sub(1) as usize];
        for l in &self.letters {
            e[l.index() as usize - 1] += l.exponent();
        }
        e
    }

    /// Number of occurrences of `σ_i^{±1}`.
    pub fn occurrences(&self, index: u32) -> usize {
        self.letters.iter().filter(|l| l.index() == index).count()
    }

    /// The closure permutation: strand `k` ends at position `perm[k]`
    /// after reading the word left to right.
    pub fn permutation(&self) -> Vec<usize> {
        // position -> strand currently there
        let mut at: Vec<usize> = (0..self.strands as usize).collect();
        for l in &self.letters {
            let i = l.index() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; at.len()];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
            }
        }
        cycles
    }

    pub(crate) fn from_parts_unchecked(strands: u32, letters: Vec<Letter>) -> Self {
        debug_assert!(letters
            .iter()
            .all(|l| l.index() >= 1 && l.index() < strands));
        BraidWord { strands, letters }
    }

    /// Signed integer form, as accepted by [`BraidWord::parse`].
    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}] on {} strands", body.join(" "), self.strands)
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s, None)
    }
}
