use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::trace::{braid_relation_neighbors, cyclic_class};
use super::{analyze, BraidWord, Letter};
use crate::error::BraidError;

/// Splits a positive word at a generator that occurs exactly once.
///
/// Letters below `index` stay on strands `1..=index`; letters above are
/// reindexed onto strands `index+1..=n`. All left letters commute with all
/// right letters, so the closure is the connected sum of the two closures.
pub fn split_connected_sum(
    word: &BraidWord,
    index: u32,
) -> Result<(BraidWord, BraidWord), BraidError> {
    if !word.is_positive() {
        return Err(BraidError::NotPositive);
    }
    if index == 0 || index >= word.strands() {
        return Err(BraidError::IndexOutOfRange {
            position: 0,
            index,
            strands: word.strands(),
        });
    }
    let exponent = word.generator_exponents()[index as usize - 1];
    if exponent != 1 {
        return Err(BraidError::NotSplittable { index, exponent });
    }
    let left: Vec<Letter> = word
        .letters()
        .iter()
        .copied()
        .filter(|l| l.index() < index)
        .collect();
    let right: Vec<Letter> = word
        .letters()
        .iter()
        .filter(|l| l.index() > index)
        .map(|l| l.shifted_down(index))
        .collect();
    Ok((
        BraidWord::from_parts_unchecked(index, left),
        BraidWord::from_parts_unchecked(word.strands() - index, right),
    ))
}

/// Result of the bounded rewrite search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reduction {
    /// A conjugate had `e_at = 1` with a one-strand empty summand; `word`
    /// is the other summand.
    Eliminated {
        word: BraidWord,
        at: u32,
        relations: usize,
    },
    /// A conjugate had `e_at = 1` with two nontrivial summands.
    ConnectedSum {
        left: BraidWord,
        right: BraidWord,
        at: u32,
        relations: usize,
    },
    /// Nothing found; reported as "irreducible at depth d", which says
    /// nothing about minimality.
    Irreducible { depth: usize, explored: usize },
}

impl Reduction {
    pub fn is_reduced(&self) -> bool {
        !matches!(self, Reduction::Irreducible { .. })
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::Eliminated {
                word,
                at,
                relations,
            } => write!(
                f,
                "eliminated σ_{at} after {relations} braid relation(s): {word}"
            ),
            Reduction::ConnectedSum {
                left,
                right,
                at,
                relations,
            } => write!(
                f,
                "connected sum at σ_{at} after {relations} braid relation(s): {left} # {right}"
            ),
            Reduction::Irreducible { depth, explored } => write!(
                f,
                "irreducible at depth {depth} ({explored} classes explored)"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of braid relations applied.
    pub depth: usize,
    /// Only accept splits at this generator.
    pub target: Option<u32>,
    /// Stop at the first nontrivial connected sum instead of continuing to
    /// look for an elimination.
    pub stop_on_connected_sum: bool,
}

/// Breadth-first search over cyclic commutation classes.
///
/// Far commutations and cyclic conjugation are free; every braid relation
/// costs one unit of depth. Visited classes are keyed by their canonical
/// letter sequence (the strand count is constant along the search).
pub fn reduce_search(word: &BraidWord, opts: SearchOptions) -> Result<Reduction, BraidError> {
    if !word.is_positive() {
        return Err(BraidError::NotPositive);
    }
    let n = word.strands();
    let start = cyclic_class(word.letters());
    let mut visited: HashSet<Vec<Letter>> = HashSet::new();
    visited.insert(start[0].clone());
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut first_sum: Option<Reduction> = None;
    while let Some((class, relations)) = queue.pop_front() {
        let rep = BraidWord::from_parts_unchecked(n, class[0].clone());
        let exps = rep.generator_exponents();
        for (k, &e) in exps.iter().enumerate() {
            let at = k as u32 + 1;
            if e != 1 || opts.target.is_some_and(|t| t != at) {
                continue;
            }
            let (left, right) = split_connected_sum(&rep, at)?;
            let trivial = |w: &BraidWord| w.is_empty() && w.strands() == 1;
            if trivial(&left) || trivial(&right) {
                let keep = if trivial(&left) { right } else { left };
                return Ok(Reduction::Eliminated {
                    word: keep,
                    at,
                    relations,
                });
            }
            if first_sum.is_none() {
                first_sum = Some(Reduction::ConnectedSum {
                    left,
                    right,
                    at,
                    relations,
                });
                if opts.stop_on_connected_sum {
                    return Ok(first_sum.unwrap());
                }
            }
        }
        if relations == opts.depth {
            continue;
        }
        for next in braid_relation_neighbors(&class) {
            let next_class = cyclic_class(&next);
            if visited.insert(next_class[0].clone()) {
                queue.push_back((next_class, relations + 1));
            }
        }
    }
    Ok(first_sum.unwrap_or(Reduction::Irreducible {
        depth: opts.depth,
        explored: visited.len(),
    }))
}

/// Looks for a positive word on fewer strands with the same closure,
/// reached by rewriting until some `e_j = 1` and discarding a one-strand
/// trivial summand.
pub fn eliminate_generator(
    word: &BraidWord,
    target: Option<u32>,
    depth: usize,
) -> Result<Option<BraidWord>, BraidError> {
    let r = reduce_search(
        word,
        SearchOptions {
            depth,
            target,
            stop_on_connected_sum: false,
        },
    )?;
    Ok(match r {
        Reduction::Eliminated { word, .. } => Some(word),
        _ => None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExcludedByBridge,
    ExcludedBySlope,
    WordReducible,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ExcludedByBridge => "excluded-by-bridge",
            Verdict::ExcludedBySlope => "excluded-by-slope",
            Verdict::WordReducible => "word-reducible",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub n: u32,
    pub e: i64,
    pub s: i64,
    pub genus: i64,
    pub candidate_slope: i64,
    /// Some `e_i <= 1`.
    pub small_exponent: bool,
    pub reduction: Reduction,
    pub verdict: Verdict,
}

/// Runs the three-summand exclusion for a positive knot closure.
pub fn exclude_three_summands(
    word: &BraidWord,
    depth: usize,
) -> Result<ExclusionReport, BraidError> {
    if !word.is_positive() {
        return Err(BraidError::NotPositive);
    }
    let a = analyze(word);
    if !a.is_knot {
        return Err(BraidError::NotAKnot(a.components));
    }
    let s = a.s.expect("positive");
    let genus = a.genus.expect("positive knot");
    let small_exponent = a.e_i.iter().any(|&x| x <= 1);
    let reduction = reduce_search(
        word,
        SearchOptions {
            depth,
            target: None,
            stop_on_connected_sum: false,
        },
    )?;
    let verdict = if a.strands <= 5 {
        Verdict::ExcludedByBridge
    } else if s >= 3 {
        Verdict::ExcludedBySlope
    } else if small_exponent || reduction.is_reduced() {
        Verdict::WordReducible
    } else {
        Verdict::Inconclusive
    };
    Ok(ExclusionReport {
        n: a.strands,
        e: a.e,
        s,
        genus,
        candidate_slope: 2 * genus - 1,
        small_exponent,
        reduction,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: u32) -> BraidWord {
        BraidWord::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn split_examples() {
        let (l, r) = split_connected_sum(&w("1 1 1 2 3 3 3", 4), 2).unwrap();
        assert_eq!(l, w("1 1 1", 2));
        assert_eq!(r, w("1 1 1", 2));
        let (l, r) = split_connected_sum(&w("1 2", 3), 2).unwrap();
        assert_eq!(l, w("1", 2));
        assert_eq!(r, BraidWord::empty(1));
        let input = w("1 1 2 3 3", 4);
        let (l, r) = split_connected_sum(&input, 2).unwrap();
        assert_eq!((l.clone(), r.clone()), (w("1 1", 2), w("1 1", 2)));
        assert_eq!(input.components(), 3);
        assert_eq!(input.components(), l.components() + r.components() - 1);
    }

    #[test]
    fn split_rejects() {
        assert!(matches!(
            split_connected_sum(&w("1 2 2", 3), 2),
            Err(BraidError::NotSplittable {
                index: 2,
                exponent: 2
            })
        ));
        assert_eq!(
            split_connected_sum(&w("1 -2", 3), 2),
            Err(BraidError::NotPositive)
        );
    }

    #[test]
    fn eliminate_examples() {
        let out = eliminate_generator(&w("1 2 1 2", 3), None, 3)
            .unwrap()
            .unwrap();
        assert_eq!(out.strands(), 2);
        assert_eq!(out.exponent_sum() - out.strands() as i64, 1);
        assert_eq!(out.components(), 1);

        assert_eq!(eliminate_generator(&w("1 1 1", 2), None, 10).unwrap(), None);
        assert_eq!(
            eliminate_generator(&w("1", 2), None, 1).unwrap(),
            Some(BraidWord::empty(1))
        );
    }

    #[test]
    fn exclusion_verdicts() {
        let r = exclude_three_summands(&w("1 1 1", 2), 4).unwrap();
        assert_eq!(r.verdict, Verdict::ExcludedByBridge);
        assert_eq!(r.candidate_slope, 1);
        assert!(matches!(
            exclude_three_summands(&w("1 1", 2), 4),
            Err(BraidError::NotAKnot(2))
        ));
    }
}
