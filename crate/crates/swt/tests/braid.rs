use proptest::prelude::*;

use swt::braid::{
    analyze, applicable_moves, apply_move, eliminate_generator, exclude_three_summands,
    split_connected_sum, Move, Verdict,
};
use swt::enumerate::{components_union_find, positive_words};
use swt::BraidWord;

fn word(text: &str, strands: u32) -> BraidWord {
    BraidWord::parse(text, Some(strands)).unwrap()
}

/// Closure components by following each strand through the crossings
/// until it returns to its start.
fn strand_cycles(n: u32, letters: &[i32]) -> usize {
    let n = n as usize;
    let step = |start: usize| {
        letters.iter().fold(start, |pos, &l| {
            let i = l.unsigned_abs() as usize;
            if pos + 1 == i {
                i
            } else if pos == i {
                i - 1
            } else {
                pos
            }
        })
    };
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = step(x);
        }
    }
    cycles
}

fn e_minus_n(w: &BraidWord) -> i64 {
    w.exponent_sum() - w.strands() as i64
}

#[test]
fn trefoil_on_two_strands() {
    let a = analyze(&word("1 1 1", 2));
    assert_eq!(
        (a.e, a.components, a.genus, a.candidate_slope, a.s),
        (3, 1, Some(1), Some(1), Some(1))
    );
    assert!(a.is_knot);
}

#[test]
fn empty_word_is_unlink() {
    let a = analyze(&BraidWord::empty(3));
    assert_eq!((a.e, a.components, a.is_knot), (0, 3, false));
}

#[test]
fn torus_knot_genera() {
    // Seifert circles of a closed braid are its strands, so chi = n - e;
    // torus knots T(a, b) have genus (a - 1)(b - 1) / 2
    for (text, n, a, b) in [
        ("1 1 1 1 1", 2, 2, 5),
        ("1 2 1 2 1 2 1 2", 3, 3, 4),
        ("1 2 1 2 1 2 1 2 1 2", 3, 3, 5),
    ] {
        let w = word(text, n);
        let an = analyze(&w);
        let chi = n as i64 - w.len() as i64;
        assert_eq!(an.genus, Some((1 - chi) / 2));
        assert_eq!(an.genus, Some((a - 1) * (b - 1) / 2));
        assert_eq!(an.candidate_slope, Some(2 * an.genus.unwrap() - 1));
    }
    assert_eq!(analyze(&word("1 1 1 1 1", 2)).candidate_slope, Some(3));
}

#[test]
fn braid_relation_at_zero() {
    let w = apply_move(&word("1 2 1", 3), Move::BraidRelation { position: 0 }).unwrap();
    assert_eq!(w, word("2 1 2", 3));
}

#[test]
fn far_commutation() {
    let w = apply_move(&word("1 3", 4), Move::Commute { position: 0 }).unwrap();
    assert_eq!(w, word("3 1", 4));
    assert!(apply_move(&word("1 2", 3), Move::Commute { position: 0 }).is_err());
}

#[test]
fn destabilize_unknot() {
    let before = word("1 2", 3);
    let after = apply_move(&before, Move::Destabilize).unwrap();
    assert_eq!(after, word("1", 2));
    assert_eq!((before.components(), after.components()), (1, 1));
    assert_eq!((e_minus_n(&before), e_minus_n(&after)), (-1, -1));
    assert!(apply_move(&word("2 2", 3), Move::Destabilize).is_err());
}

#[test]
fn stabilize_then_destabilize() {
    let w = word("1 1 1", 2);
    let up = apply_move(&w, Move::Stabilize).unwrap();
    assert_eq!(up.strands(), 3);
    assert_eq!(apply_move(&up, Move::Destabilize).unwrap(), w);
}

#[test]
fn split_two_trefoils() {
    let (l, r) = split_connected_sum(&word("1 1 1 2 3 3 3", 4), 2).unwrap();
    assert_eq!((l.clone(), r.clone()), (word("1 1 1", 2), word("1 1 1", 2)));
    // the removed crossing and strand cancel in e - n, so genus adds
    let w = word("1 1 1 2 3 3 3", 4);
    assert_eq!(e_minus_n(&w), e_minus_n(&l) + e_minus_n(&r) + 1);
    assert_eq!(
        analyze(&w).genus,
        Some(analyze(&l).genus.unwrap() + analyze(&r).genus.unwrap())
    );
    assert_eq!(w.components(), l.components() + r.components() - 1);
}

#[test]
fn split_unknot_summand() {
    let (l, r) = split_connected_sum(&word("1 2", 3), 2).unwrap();
    assert_eq!((l, r), (word("1", 2), BraidWord::empty(1)));
}

#[test]
fn split_hopf_links() {
    let w = word("1 1 2 3 3", 4);
    let (l, r) = split_connected_sum(&w, 2).unwrap();
    assert_eq!((l.clone(), r.clone()), (word("1 1", 2), word("1 1", 2)));
    assert_eq!(strand_cycles(4, &w.to_signed()), 3);
    assert_eq!(w.components(), l.components() + r.components() - 1);
}

#[test]
fn split_needs_single_occurrence() {
    assert!(split_connected_sum(&word("1 2 2", 3), 2).is_err());
}

#[test]
fn eliminate_trefoil_on_three_strands() {
    let w = eliminate_generator(&word("1 2 1 2", 3), None, 3)
        .unwrap()
        .expect("reducible");
    assert_eq!(w.strands(), 2);
    assert_eq!(e_minus_n(&w), 1);
    assert_eq!(w.components(), 1);
}

#[test]
fn minimal_trefoil_does_not_reduce() {
    for depth in [0, 3, 8] {
        assert_eq!(
            eliminate_generator(&word("1 1 1", 2), None, depth).unwrap(),
            None
        );
    }
}

#[test]
fn unknot_reduces_to_one_strand() {
    assert_eq!(
        eliminate_generator(&word("1", 2), None, 1).unwrap(),
        Some(BraidWord::empty(1))
    );
}

#[test]
fn exclusion_verdicts() {
    assert_eq!(
        exclude_three_summands(&word("1 1 1", 2), 8)
            .unwrap()
            .verdict,
        Verdict::ExcludedByBridge
    );
    // 6 strands, e = 15: s = 15 - 12 + 2 = 5
    let w = word("1 1 1 2 2 2 3 3 3 4 4 4 5 5 5", 6);
    let r = exclude_three_summands(&w, 0).unwrap();
    assert_eq!(r.s, 5);
    assert_eq!(r.verdict, Verdict::ExcludedBySlope);
    assert!(exclude_three_summands(&word("1 1", 2), 8).is_err());
}

#[test]
fn all_exponents_two_are_resolved() {
    // every e_i = 2 gives s = 0; at n <= 5 the bridge bound already applies
    for n in 3..=7u32 {
        let text: Vec<String> = (1..n)
            .flat_map(|i| [i.to_string(), i.to_string()])
            .collect();
        let w = word(&text.join(" "), n);
        if w.components() != 1 {
            continue;
        }
        let r = exclude_three_summands(&w, 8).unwrap();
        assert_eq!(r.s, 0);
        assert!(
            matches!(
                r.verdict,
                Verdict::WordReducible | Verdict::ExcludedByBridge
            ),
            "{w}: {:?}",
            r.verdict
        );
    }
}

#[test]
fn positive_words_components_match_oracle() {
    for n in 1..=4 {
        for w in positive_words(n, 7) {
            let c = strand_cycles(n, &w.to_signed());
            assert_eq!(w.components(), c, "{w}");
            assert_eq!(components_union_find(&w), c, "{w}");
        }
    }
}

#[test]
fn positive_word_count() {
    // (n - 1)^k words of each length k
    let total: usize = (0..=5).map(|k| 3usize.pow(k)).sum();
    assert_eq!(positive_words(4, 5).count(), total);
}

#[test]
fn genus_formula_on_positive_knots() {
    for w in positive_words(4, 8).filter(|w| w.components() == 1) {
        let a = analyze(&w);
        assert_eq!(2 * a.genus.unwrap() - 1, e_minus_n(&w), "{w}");
    }
}

#[test]
fn moves_parse_and_display() {
    for text in [
        "commute@3",
        "braid@0",
        "conjugate",
        "destabilize",
        "stabilize",
    ] {
        assert_eq!(text.parse::<Move>().unwrap().to_string(), text);
    }
    assert!("braid".parse::<Move>().is_err());
    assert!("twist@1".parse::<Move>().is_err());
}

fn signed_word() -> impl Strategy<Value = (u32, Vec<i32>)> {
    (2u32..=8).prop_flat_map(|n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(i, pos)| if pos { i } else { -i });
        (Just(n), prop::collection::vec(letter, 0..=20))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn random_words_components_match_oracle((n, letters) in signed_word()) {
        let w = BraidWord::from_signed(Some(n), &letters).unwrap();
        prop_assert_eq!(w.components(), strand_cycles(n, &letters));
        prop_assert_eq!(components_union_find(&w), strand_cycles(n, &letters));
    }

    #[test]
    fn random_moves_preserve_invariants((n, letters) in signed_word()) {
        let w = BraidWord::from_signed(Some(n), &letters).unwrap();
        for mv in applicable_moves(&w) {
            let out = apply_move(&w, mv).unwrap();
            prop_assert_eq!(out.components(), w.components(), "{}", mv);
            prop_assert_eq!(e_minus_n(&out), e_minus_n(&w), "{}", mv);
        }
    }
}
