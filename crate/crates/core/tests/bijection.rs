//! Cross-module invariants of the clip-sequence bijection and the flip graph.

use catalan_loop::*;
use num_bigint::BigUint;
use once_cell::sync::Lazy;
use proptest::prelude::*;
use std::collections::BTreeSet;

static PERMS_BY_N: Lazy<Vec<Vec<Permutation312>>> =
    Lazy::new(|| (0..=8).map(enumerate_312).collect());

#[test]
fn roundtrip_exhaustive_to_n8() {
    for n in 1..=8 {
        let mut seen = BTreeSet::new();
        for p in &PERMS_BY_N[n] {
            let t = Triangulation::triangulation_of(p);
            assert_eq!(&t.clip_sequence(), p, "clip ∘ build at {p}");
            assert!(
                seen.insert(t.to_string()),
                "distinct permutations share a triangulation"
            );
        }
        assert_eq!(BigUint::from(seen.len()), catalan(n), "n={n}");
    }
}

#[test]
fn clip_octagon_figure() {
    let n = 6;
    let diags = [(2, 7), (2, 6), (3, 6), (4, 6), (2, 8)]
        .map(|(a, b)| Diagonal::new(a, b, n).unwrap());
    let t = Triangulation::new(n, diags).unwrap();
    assert_eq!(t.clip_sequence().to_string(), "154362");
}

#[test]
fn rotation_full_turn_small() {
    for n in 1..=6 {
        for p in &PERMS_BY_N[n] {
            let t = Triangulation::triangulation_of(p);
            let mut u = t.clone();
            for _ in 0..n + 2 {
                u = u.rotated(1);
            }
            assert_eq!(u, t, "full turn at {p}");
        }
    }
}

fn arb_perm() -> impl Strategy<Value = Permutation312> {
    (1usize..=6).prop_flat_map(|n| {
        let count = PERMS_BY_N[n].len();
        (Just(n), 0..count).prop_map(|(n, i)| PERMS_BY_N[n][i].clone())
    })
}

proptest! {
    #[test]
    fn prop_roundtrip(p in arb_perm()) {
        let t = Triangulation::triangulation_of(&p);
        prop_assert_eq!(t.clip_sequence(), p);
    }

    #[test]
    fn prop_rotate_inverse(p in arb_perm(), k in 0i64..20) {
        let t = Triangulation::triangulation_of(&p);
        prop_assert_eq!(t.rotated(k).rotated(-k), t);
    }

    #[test]
    fn prop_flip_involution(p in arb_perm(), idx in 0usize..8) {
        let t = Triangulation::triangulation_of(&p);
        if t.diagonals().is_empty() {
            return Ok(());
        }
        let d = *t.diagonals().iter().cycle().nth(idx).unwrap();
        let u = flip(&t, &d).unwrap();
        // The new diagonal is the one not shared with t.
        let new = *u.diagonals().difference(t.diagonals()).next().unwrap();
        prop_assert_eq!(flip(&u, &new).unwrap(), t);
    }

    #[test]
    fn prop_flip_word_matches_oracle(p in arb_perm(), idx in 0usize..8) {
        let t = Triangulation::triangulation_of(&p);
        if t.diagonals().is_empty() {
            return Ok(());
        }
        let d = *t.diagonals().iter().cycle().nth(idx).unwrap();
        let oracle = flip(&t, &d).unwrap().clip_sequence();
        prop_assert_eq!(flip_word_at(&p, &d).unwrap(), oracle);
    }
}
