//! Words modulo far commutation (`σ_iσ_j = σ_jσ_i` for |i-j| >= 2) and
//! cyclic conjugation.
//!
//! A word is treated as a partial order on its letter occurrences; two
//! occurrences are ordered when their generators are adjacent or equal.
//! The canonical representative of a commutation class is its
//! lexicographically least linearization, and the canonical representative
//! of a cyclic class is the least such form over all conjugates.

use std::collections::{BTreeSet, VecDeque};

use super::Letter;

pub(crate) fn dependent(a: Letter, b: Letter) -> bool {
    a.index().abs_diff(b.index()) <= 1
}

/// `below[k]` has bit `j` set when occurrence `j` must precede occurrence `k`.
fn precedence(letters: &[Letter]) -> Vec<u64> {
    assert!(
        letters.len() <= 64,
        "trace routines handle words up to 64 letters"
    );
    let mut below = vec![0u64; letters.len()];
    for k in 0..letters.len() {
        let mut acc = 0u64;
        for j in 0..k {
            if dependent(letters[j], letters[k]) {
                acc |= below[j] | (1 << j);
            }
        }
        below[k] = acc;
    }
    below
}

fn full_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Lexicographically least word in the commutation class of `letters`.
pub fn lex_normal_form(letters: &[Letter]) -> Vec<Letter> {
    let below = precedence(letters);
    let mut remaining = full_mask(letters.len());
    let mut out = Vec::with_capacity(letters.len());
    while remaining != 0 {
        let mut best: Option<usize> = None;
        let mut bits = remaining;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if below[k] & remaining == 0 && best.is_none_or(|b| letters[k] < letters[b]) {
                best = Some(k);
            }
        }
        let k = best.expect("a finite poset has a minimal element");
        remaining &= !(1 << k);
        out.push(letters[k]);
    }
    out
}

/// Normal forms of every cyclic conjugate of the trace of `letters`,
/// sorted ascending.
pub fn cyclic_class(letters: &[Letter]) -> Vec<Vec<Letter>> {
    let start = lex_normal_form(letters);
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        let below = precedence(&w);
        for k in 0..w.len() {
            if below[k] != 0 {
                continue;
            }
            let mut next: Vec<Letter> = Vec::with_capacity(w.len());
            next.extend(
                w.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &l)| l),
            );
            next.push(w[k]);
            let nf = lex_normal_form(&next);
            if seen.insert(nf.clone()) {
                queue.push_back(nf);
            }
        }
    }
    seen.into_iter().collect()
}

/// Least normal form over all cyclic conjugates.
pub fn cyclic_canonical(letters: &[Letter]) -> Vec<Letter> {
    cyclic_class(letters).into_iter().next().unwrap_or_default()
}

/// All words obtained from some conjugate in `class` by one braid relation
/// `aba -> bab` applied to a factor that is contiguous in some
/// linearization.
pub fn braid_relation_neighbors(class: &[Vec<Letter>]) -> Vec<Vec<Letter>> {
    let mut out = BTreeSet::new();
    for w in class {
        let below = precedence(w);
        let len = w.len();
        for z in 0..len {
            for x in 0..z {
                if w[x] != w[z] || below[z] & (1 << x) == 0 {
                    continue;
                }
                // occurrences strictly between x and z
                let between: Vec<usize> = (x + 1..z)
                    .filter(|&y| below[y] & (1 << x) != 0 && below[z] & (1 << y) != 0)
                    .collect();
                let [y] = between[..] else { continue };
                let (a, b) = (w[x], w[y]);
                if a.index().abs_diff(b.index()) != 1 || a.is_positive() != b.is_positive() {
                    continue;
                }
                // everything below z except x, y forms a down-set
                let ideal = below[z] & !(1 << x) & !(1 << y);
                let mut next = Vec::with_capacity(len);
                next.extend((0..len).filter(|&k| ideal & (1 << k) != 0).map(|k| w[k]));
                next.extend([b, a, b]);
                next.extend(
                    (0..len)
                        .filter(|&k| ideal & (1 << k) == 0 && k != x && k != y && k != z)
                        .map(|k| w[k]),
                );
                out.insert(next);
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(xs: &[i32]) -> Vec<Letter> {
        xs.iter()
            .map(|&x| Letter::new(x.unsigned_abs(), x > 0))
            .collect()
    }

    #[test]
    fn normal_form_sorts_commuting_letters() {
        assert_eq!(lex_normal_form(&ls(&[3, 1])), ls(&[1, 3]));
        assert_eq!(lex_normal_form(&ls(&[2, 1])), ls(&[2, 1]));
        assert_eq!(lex_normal_form(&ls(&[4, 2, 1, 3])), ls(&[2, 1, 4, 3]));
    }

    #[test]
    fn cyclic_canonical_is_rotation_invariant() {
        let w = ls(&[1, 2, 3, 1, 2, 2, 3]);
        let c = cyclic_canonical(&w);
        for r in 0..w.len() {
            let mut rot = w.clone();
            rot.rotate_left(r);
            assert_eq!(cyclic_canonical(&rot), c);
        }
    }

    #[test]
    fn braid_neighbors_of_1212() {
        let class = cyclic_class(&ls(&[1, 2, 1, 2]));
        let n = braid_relation_neighbors(&class);
        assert!(n.contains(&ls(&[2, 1, 2, 2])));
        // every neighbor keeps the letter count
        assert!(n.iter().all(|w| w.len() == 4));
    }

    #[test]
    fn braid_relation_across_commuting_letter() {
        // 1 3 2 1: the 3 commutes with 1, so 1 2 1 is a factor of 3 1 2 1
        let class = vec![lex_normal_form(&ls(&[1, 3, 2, 1]))];
        let n = braid_relation_neighbors(&class);
        assert!(n
            .iter()
            .any(|w| lex_normal_form(w) == lex_normal_form(&ls(&[3, 2, 1, 2]))));
    }
}
