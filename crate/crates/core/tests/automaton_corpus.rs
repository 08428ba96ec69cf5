//! Bad-prefix detection on random small instances.

use adgame_core::automaton::{build_solution_checker, AcceptanceMode};
use adgame_core::pcp::{parse_instance, words_of_length, PcpInstance};
use proptest::prelude::*;

fn instance(images: &[(Vec<u8>, Vec<u8>)]) -> PcpInstance {
    let names = |w: &Vec<u8>| w.iter().map(|&b| if b == 0 { "a".to_string() } else { "b".to_string() }).collect();
    let domain: Vec<String> = ["x", "y", "z"][..images.len()].iter().map(|s| s.to_string()).collect();
    let images = images.iter().map(|(h, g)| (names(h), names(g))).collect();
    PcpInstance::new(domain, vec!["a".into(), "b".into()], images).unwrap()
}

fn image_pair() -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (prop::collection::vec(0u8..2, 0..=3), prop::collection::vec(0u8..2, 0..=3))
}

fn all_words(n: usize, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=max_len).flat_map(move |len| words_of_length(n, len))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn accepted_prefixes_are_bad(images in prop::collection::vec(image_pair(), 1..=2)) {
        let inst = instance(&images);
        let a = build_solution_checker(&inst);
        for w in all_words(inst.domain().len(), 5) {
            if let Some(n) = a.shortest_accepted_prefix(&w, AcceptanceMode::Forward) {
                prop_assert!(inst.first_bad_prefix(&w[..n]).unwrap().is_some(), "{} accepted without a bad prefix", inst.render_word(&w));
            }
        }
    }

    #[test]
    fn reversed_and_unfolded_automata_agree(images in prop::collection::vec(image_pair(), 1..=2)) {
        let inst = instance(&images);
        let a = build_solution_checker(&inst);
        let b = a.reverse().unwrap();
        let ua = a.unfold_self_loops().unwrap();
        let ub = b.unfold_self_loops().unwrap();
        for w in all_words(inst.domain().len(), 4) {
            let fwd = a.shortest_accepted_prefix(&w, AcceptanceMode::Forward);
            prop_assert_eq!(fwd, b.shortest_accepted_prefix(&w, AcceptanceMode::ReverseWeight));
            prop_assert_eq!(fwd, ua.shortest_accepted_prefix(&w, AcceptanceMode::Forward));
            prop_assert_eq!(fwd, ub.shortest_accepted_prefix(&w, AcceptanceMode::ReverseWeight));
        }
    }

    #[test]
    fn omega_solution_prefixes_are_never_accepted(images in prop::collection::vec(image_pair(), 1..=2)) {
        let inst = instance(&images);
        let a = build_solution_checker(&inst);
        for w in all_words(inst.domain().len(), 5) {
            if inst.is_omega_solution_up_to(&w, w.len()).unwrap() {
                prop_assert!(!a.accepts_prefix_of(&w, AcceptanceMode::Forward));
            }
        }
    }
}

#[test]
fn completeness_gap_is_pinned() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/instances/gap.pcp");
    let inst = parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap();
    let a = build_solution_checker(&inst);
    let word = |s: &str| inst.parse_word(s).unwrap();

    // the equal-length bad prefix "ba" is only seen one letter later
    assert_eq!(inst.first_bad_prefix(&word("ba")).unwrap().map(|b| b.0), Some(2));
    assert_eq!(a.shortest_accepted_prefix(&word("ba"), AcceptanceMode::Forward), None);
    assert_eq!(a.shortest_accepted_prefix(&word("baa"), AcceptanceMode::Forward), Some(3));

    // the mismatch in "aaab" is never seen along aaab·a^k
    for k in 0..=4 {
        let w = word(&format!("aaab{}", "a".repeat(k)));
        assert_eq!(inst.first_bad_prefix(&w).unwrap().map(|b| b.0), Some(4));
        assert!(!a.accepts_prefix_of(&w, AcceptanceMode::Forward));
    }
}
