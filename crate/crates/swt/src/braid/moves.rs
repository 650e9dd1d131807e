use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BraidWord, Letter};
use crate::error::BraidError;

/// A single rewrite that preserves the closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// `σ_i σ_j -> σ_j σ_i` at `position`, |i - j| >= 2.
    Commute { position: usize },
    /// `σ_i σ_j σ_i -> σ_j σ_i σ_j` at `position`, |i - j| = 1, same signs.
    BraidRelation { position: usize },
    /// Move the first letter to the end.
    Conjugate,
    /// Remove a sole final `σ_{n-1}` and the last strand.
    Destabilize,
    /// Append `σ_n` on a new strand.
    Stabilize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Commute { position } => write!(f, "commute@{position}"),
            Move::BraidRelation { position } => write!(f, "braid@{position}"),
            Move::Conjugate => f.write_str("conjugate"),
            Move::Destabilize => f.write_str("destabilize"),
            Move::Stabilize => f.write_str("stabilize"),
        }
    }
}

impl FromStr for Move {
    type Err = BraidError;

    /// Accepts `commute@3`, `braid@0`, `conjugate`, `destabilize`, `stabilize`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::BadToken(s.to_string());
        let (name, arg) = match s.split_once('@') {
            Some((n, a)) => (n, Some(a.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        match (name, arg) {
            ("commute", Some(position)) => Ok(Move::Commute { position }),
            ("braid", Some(position)) => Ok(Move::BraidRelation { position }),
            ("conjugate", None) => Ok(Move::Conjugate),
            ("destabilize", None) => Ok(Move::Destabilize),
            ("stabilize", None) => Ok(Move::Stabilize),
            _ => Err(bad()),
        }
    }
}

pub fn apply_move(word: &BraidWord, mv: Move) -> Result<BraidWord, BraidError> {
    let n = word.strands();
    let mut letters = word.letters().to_vec();
    match mv {
        Move::Commute { position } => {
            let (a, b) = pair_at(&letters, position)?;
            if a.index().abs_diff(b.index()) < 2 {
                return Err(BraidError::MoveMismatch(format!(
                    "letters {a} {b} at {position} do not commute"
                )));
            }
            letters.swap(position, position + 1);
        }
        Move::BraidRelation { position } => {
            if position + 2 >= letters.len() {
                return Err(BraidError::MoveMismatch(format!(
                    "no three letters at {position}"
                )));
            }
            let (a, b, c) = (
                letters[position],
                letters[position + 1],
                letters[position + 2],
            );
            if a != c || a.index().abs_diff(b.index()) != 1 || a.is_positive() != b.is_positive() {
                return Err(BraidError::MoveMismatch(format!(
                    "{a} {b} {c} at {position} is not a braid relation pattern"
                )));
            }
            letters[position] = b;
            letters[position + 1] = a;
            letters[position + 2] = b;
        }
        Move::Conjugate => {
            if !letters.is_empty() {
                letters.rotate_left(1);
            }
        }
        Move::Destabilize => {
            let top = n.checked_sub(1).filter(|&t| t >= 1).ok_or_else(|| {
                BraidError::MoveMismatch("no generator to remove on one strand".into())
            })?;
            let exponent = word.generator_exponents()[top as usize - 1];
            let ok = exponent == 1
                && word.occurrences(top) == 1
                && letters.last() == Some(&Letter::pos(top));
            if !ok {
                return Err(BraidError::NotDestabilizable {
                    index: top,
                    exponent,
                });
            }
            letters.pop();
            return Ok(BraidWord::from_parts_unchecked(n - 1, letters));
        }
        Move::Stabilize => {
            letters.push(Letter::pos(n));
            return Ok(BraidWord::from_parts_unchecked(n + 1, letters));
        }
    }
    Ok(BraidWord::from_parts_unchecked(n, letters))
}

fn pair_at(letters: &[Letter], position: usize) -> Result<(Letter, Letter), BraidError> {
    match (letters.get(position), letters.get(position + 1)) {
        (Some(&a), Some(&b)) => Ok((a, b)),
        _ => Err(BraidError::MoveMismatch(format!(
            "no two letters at {position}"
        ))),
    }
}

/// Every word-level move that applies to `word` (stabilization excluded).
pub fn applicable_moves(word: &BraidWord) -> Vec<Move> {
    let l = word.letters();
    let mut out = Vec::new();
    for p in 0..l.len().saturating_sub(1) {
        if l[p].index().abs_diff(l[p + 1].index()) >= 2 {
            out.push(Move::Commute { position: p });
        }
    }
    for p in 0..l.len().saturating_sub(2) {
        let (a, b, c) = (l[p], l[p + 1], l[p + 2]);
        if a == c && a.index().abs_diff(b.index()) == 1 && a.is_positive() == b.is_positive() {
            out.push(Move::BraidRelation { position: p });
        }
    }
    if !l.is_empty() {
        out.push(Move::Conjugate);
    }
    if apply_move(word, Move::Destabilize).is_ok() {
        out.push(Move::Destabilize);
    }
    out
}
