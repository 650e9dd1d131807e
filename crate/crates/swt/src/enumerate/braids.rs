use std::collections::HashSet;

use petgraph::unionfind::UnionFind;

use crate::braid::trace::{cyclic_class, lex_normal_form};
use crate::braid::{BraidWord, Letter};

/// Closure components by following every strand through the crossings
/// and merging its start and end positions.
pub fn components_union_find(word: &BraidWord) -> usize {
    let n = word.strands() as usize;
    let mut uf = UnionFind::<usize>::new(n);
    for start in 0..n {
        let mut pos = start;
        for l in word.letters() {
            let i = l.index() as usize;
            if pos + 1 == i {
                pos = i;
            } else if pos == i {
                pos = i - 1;
            }
        }
        uf.union(start, pos);
    }
    (0..n).filter(|&k| uf.find(k) == k).count()
}

/// Every positive word on `n` strands with at most `max_len` letters,
/// shortest first, then lexicographically.
pub fn positive_words(n: u32, max_len: usize) -> impl Iterator<Item = BraidWord> {
    let gens = n.saturating_sub(1) as usize;
    (0..=max_len)
        .filter(move |&len| gens > 0 || len == 0)
        .flat_map(move |len| {
            let total = gens.pow(len as u32);
            (0..total).map(move |mut code| {
                let mut letters = vec![Letter::pos(1); len];
                for slot in letters.iter_mut().rev() {
                    *slot = Letter::pos((code % gens) as u32 + 1);
                    code /= gens;
                }
                BraidWord::new(n, letters).expect("indices in range")
            })
        })
}

/// Exponent vectors of length `n - 1` with every entry at least 2 and
/// entries summing to `total`, in lexicographic order.
pub fn exponent_vectors(n: u32, total: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 2..=left.saturating_sub(2 * (slots - 1)) {
            cur.push(e);
            rec(left - e, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let slots = n.saturating_sub(1) as usize;
    if slots > 0 {
        rec(total, slots, &mut Vec::new(), &mut out);
    }
    out
}

/// One positive knot word per cyclic commutation class with the given
/// exponent vector, as lexicographically least normal forms, sorted.
///
/// A commutation class is fixed by how each adjacent pair `σ_i, σ_{i+1}`
/// interleaves, so classes are generated as tuples of interleavings.
pub fn knot_classes(exponents: &[usize]) -> Vec<BraidWord> {
    let n = exponents.len() as u32 + 1;
    let pairs: Vec<Vec<u64>> = exponents
        .windows(2)
        .map(|w| interleavings(w[0], w[1]))
        .collect();
    let mut choice = vec![0usize; pairs.len()];
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut out = Vec::new();
    loop {
        let masks: Vec<u64> = choice.iter().zip(&pairs).map(|(&c, p)| p[c]).collect();
        if let Some(letters) = merge(exponents, &masks) {
            let nf = lex_normal_form(&letters);
            if !seen.contains(&nf) {
                let word = BraidWord::new(n, nf.clone()).expect("indices in range");
                let class = cyclic_class(&nf);
                if word.components() == 1 {
                    out.push(BraidWord::new(n, class[0].clone()).expect("indices in range"));
                }
                seen.extend(class);
            }
        }
        // odometer over the interleaving choices
        let mut k = 0;
        loop {
            if k == choice.len() {
                out.sort_by(|a, b| a.letters().cmp(b.letters()));
                return out;
            }
            choice[k] += 1;
            if choice[k] < pairs[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Bit masks over `a + b` slots with `a` bits set: a set bit is an
/// occurrence of the lower generator.
fn interleavings(a: usize, b: usize) -> Vec<u64> {
    let len = a + b;
    (0u64..1 << len)
        .filter(|m| m.count_ones() as usize == a)
        .collect()
}

/// The least linearization of the interleavings, or `None` when they are
/// inconsistent.
fn merge(exponents: &[usize], masks: &[u64]) -> Option<Vec<Letter>> {
    let g = exponents.len();
    // before[i][k]: occurrences of σ_{i-1} and σ_{i+1} that precede the
    // k-th σ_i
    let mut before: Vec<Vec<[usize; 2]>> = exponents.iter().map(|&e| vec![[0, 0]; e]).collect();
    for (i, &m) in masks.iter().enumerate() {
        let (mut lo, mut hi) = (0, 0);
        for slot in 0..exponents[i] + exponents[i + 1] {
            if m >> slot & 1 == 1 {
                before[i][lo][1] = hi;
                lo += 1;
            } else {
                before[i + 1][hi][0] = lo;
                hi += 1;
            }
        }
    }
    let mut placed = vec![0usize; g];
    let total: usize = exponents.iter().sum();
    let mut out = Vec::with_capacity(total);
    while out.len() < total {
        let ready = (0..g).find(|&i| {
            let k = placed[i];
            k < exponents[i]
                && (i == 0 || before[i][k][0] <= placed[i - 1])
                && (i + 1 == g || before[i][k][1] <= placed[i + 1])
        })?;
        placed[ready] += 1;
        out.push(Letter::pos(ready as u32 + 1));
    }
    Some(out)
}
