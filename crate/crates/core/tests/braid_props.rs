//! Garside normal form against rewriting and Burau oracles.

use adgame_core::braid::{braids_equal, burau3, fundamental_braid, garside_nf, is_trivial, BraidWord};
use proptest::prelude::*;

/// Applies length-preserving positive braid relations at the given sites.
fn rewrite(mut w: Vec<i32>, sites: &[usize]) -> Vec<i32> {
    for &s in sites {
        if w.len() < 2 {
            break;
        }
        let i = s % (w.len() - 1);
        let (x, y) = (w[i], w[i + 1]);
        if (x - y).abs() >= 2 {
            w.swap(i, i + 1);
        } else if (x - y).abs() == 1 && i + 2 < w.len() && w[i + 2] == x {
            w[i..i + 3].copy_from_slice(&[y, x, y]);
        }
    }
    w
}

fn delta_positive(n: usize, k: i64, u: &[i32]) -> BraidWord {
    fundamental_braid(n).unwrap().pow(k).concat(&BraidWord::new(n, u.iter().copied()).unwrap()).unwrap()
}

fn signed(n: i32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..n, any::<bool>()), 0..=max_len).prop_map(|v| v.into_iter().map(|(i, s)| if s { i } else { -i }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_canonical_in_b4(
        u in prop::collection::vec(1i32..4, 0..=12),
        sites in prop::collection::vec(any::<usize>(), 0..=40),
        k in -2i64..=2,
    ) {
        let v = rewrite(u.clone(), &sites);
        let (x, y) = (delta_positive(4, k, &u), delta_positive(4, k, &v));
        let nf = garside_nf(&x);
        prop_assert!(nf.is_normal());
        prop_assert_eq!(&nf, &garside_nf(&y));
        prop_assert!(braids_equal(&nf.to_word(), &x).unwrap());
    }

    #[test]
    fn positive_length_is_invariant(u in prop::collection::vec(1i32..4, 0..=10), v in prop::collection::vec(1i32..4, 0..=10)) {
        if u.len() != v.len() {
            prop_assert_ne!(garside_nf(&delta_positive(4, 0, &u)), garside_nf(&delta_positive(4, 0, &v)));
        }
    }

    #[test]
    fn inverses_cancel(w in signed(5, 16)) {
        let b = BraidWord::new(5, w).unwrap();
        prop_assert!(is_trivial(&b.concat(&b.inverse()).unwrap()));
        prop_assert!(is_trivial(&b.inverse().concat(&b).unwrap()));
    }

    #[test]
    fn garside_matches_burau_in_b3(u in signed(3, 10), v in signed(3, 10)) {
        let (x, y) = (BraidWord::new(3, u).unwrap(), BraidWord::new(3, v).unwrap());
        let equal = braids_equal(&x, &y).unwrap();
        prop_assert_eq!(equal, burau3(&x).unwrap() == burau3(&y).unwrap());
    }

    #[test]
    fn delta_squared_is_central_in_b4(w in signed(4, 12)) {
        let b = BraidWord::new(4, w).unwrap();
        let d2 = fundamental_braid(4).unwrap().pow(2);
        prop_assert!(braids_equal(&d2.concat(&b).unwrap(), &b.concat(&d2).unwrap()).unwrap());
    }
}
