use num_integer::Integer;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SlopeCandidate {
    pub l1: u32,
    pub l2: u32,
    pub r: u32,
}

/// Lens summand orders `2 <= l1 < l2`, coprime, whose product `r` is a
/// possible slope `|r| <= b`; sorted by `r`, then `l1`.
pub fn feasible_slopes(b: u32) -> Vec<SlopeCandidate> {
    let mut out = Vec::new();
    for l1 in 2.. {
        if l1 * (l1 + 1) > b {
            break;
        }
        for l2 in l1 + 1..=b / l1 {
            if l1.gcd(&l2) == 1 {
                out.push(SlopeCandidate { l1, l2, r: l1 * l2 });
            }
        }
    }
    out.sort_by_key(|c| (c.r, c.l1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bridge_numbers() {
        for b in 1..=5 {
            assert!(feasible_slopes(b).is_empty());
        }
        let r: Vec<_> = feasible_slopes(10)
            .iter()
            .map(|c| (c.l1, c.l2, c.r))
            .collect();
        assert_eq!(r, vec![(2, 3, 6), (2, 5, 10)]);
    }
}
