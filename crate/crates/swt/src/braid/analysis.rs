use serde::{Deserialize, Serialize};

use super::BraidWord;

/// Exponent, component and genus data for a braid word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidAnalysis {
    pub strands: u32,
    /// Algebraic exponent sum.
    pub e: i64,
    /// `e_i` for i = 1..n-1.
    pub e_i: Vec<i64>,
    /// `e - 2n + 2`, only for positive words.
    pub s: Option<i64>,
    pub components: usize,
    pub is_knot: bool,
    pub positive: bool,
    /// Genus of the closure, via the fiber surface built from n disks and
    /// one band per letter. Present only for positive knot closures.
    pub genus: Option<i64>,
    /// `2g - 1`.
    pub candidate_slope: Option<i64>,
    /// The closure is a bridge presentation with n maxima.
    pub bridge_upper_bound: u32,
}

pub fn analyze(word: &BraidWord) -> BraidAnalysis {
    let n = word.strands() as i64;
    let e = word.exponent_sum();
    let positive = word.is_positive();
    let components = word.components();
    let is_knot = components == 1;
    let genus = (positive && is_knot).then(|| {
        let chi = n - e;
        debug_assert_eq!((1 - chi) % 2, 0);
        (1 - chi) / 2
    });
    BraidAnalysis {
        strands: word.strands(),
        e,
        e_i: word.generator_exponents(),
        s: positive.then_some(e - 2 * n + 2),
        components,
        is_knot,
        positive,
        genus,
        candidate_slope: genus.map(|g| 2 * g - 1),
        bridge_upper_bound: word.strands(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let a = analyze(&"1 1 1".parse().unwrap());
        assert_eq!(a.e, 3);
        assert_eq!(a.components, 1);
        assert_eq!(a.genus, Some(1));
        assert_eq!(a.candidate_slope, Some(1));
        assert_eq!(a.s, Some(1));
        assert_eq!(a.bridge_upper_bound, 2);
    }

    #[test]
    fn unlink_and_negative_words() {
        let a = analyze(&BraidWord::empty(3));
        assert_eq!(a.e, 0);
        assert_eq!(a.components, 3);
        assert!(!a.is_knot);
        assert_eq!(a.genus, None);

        let a = analyze(&BraidWord::parse("1 -2", None).unwrap());
        assert!(a.is_knot);
        assert_eq!(a.s, None);
        assert_eq!(a.genus, None);
    }
}
