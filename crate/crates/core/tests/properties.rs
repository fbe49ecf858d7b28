mod common;

use common::{naive_extension_length, naive_image, naive_preimage, words_of_length, Rows};
use proptest::prelude::*;
use resetlab::extension::extension_lengths;
use resetlab::reset::{check_sync_word, inverse_layers, default_layer_limit};
use resetlab::{
    shortest_avoiding_word, shortest_extending_word, shortest_reset_word, Dfa, StateSet, Word,
};

fn automaton(max_n: usize, max_k: usize) -> impl Strategy<Value = (usize, Rows)> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        (Just(n), prop::collection::vec(prop::collection::vec(0..n, n), k))
    })
}

fn word(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 0..=max_len).prop_map(Word::from_letters)
}

/// An automaton with a word and two subsets of its states.
fn setup() -> impl Strategy<Value = (Dfa, Rows, Word, Word, StateSet, StateSet)> {
    automaton(8, 3).prop_flat_map(|(n, rows)| {
        let k = rows.len();
        let dfa = Dfa::new(n, &rows).unwrap();
        let mask = 0..(1u32 << n);
        (
            Just(dfa),
            Just(rows),
            word(k, 8),
            word(k, 8),
            mask.clone().prop_map(StateSet::from_mask),
            mask.prop_map(StateSet::from_mask),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn adjointness((dfa, _, w, _, s, _) in setup()) {
        let pre = dfa.preimage_word(s, &w);
        for q in 0..dfa.n() {
            let image = dfa.image(StateSet::singleton(q), &w);
            prop_assert_eq!(pre.contains(q), image.is_subset(s));
        }
    }

    #[test]
    fn composition((dfa, _, u, v, s, _) in setup()) {
        let uv = u.concat(&v);
        prop_assert_eq!(
            dfa.preimage_word(s, &uv),
            dfa.preimage_word(dfa.preimage_word(s, &v), &u)
        );
        let q = dfa.full_set();
        prop_assert_eq!(dfa.image(q, &uv), dfa.image(dfa.image(q, &u), &v));
    }

    #[test]
    fn monotonicity((dfa, _, w, _, s, t) in setup()) {
        let inner = s.intersection(t);
        prop_assert!(dfa.preimage_word(inner, &w).is_subset(dfa.preimage_word(s, &w)));
        prop_assert!(dfa.image(inner, &w).is_subset(dfa.image(s, &w)));
    }

    #[test]
    fn cached_lookups_match_table((dfa, rows, _, _, s, _) in setup()) {
        for a in 0..dfa.k() {
            prop_assert_eq!(dfa.image_letter(s, a).mask(), naive_image(&rows, s.mask(), a));
            prop_assert_eq!(dfa.preimage(s, a).mask(), naive_preimage(&rows, s.mask(), a));
        }
    }

    #[test]
    fn permutation_letters_invert((dfa, _, _, _, s, _) in setup()) {
        for a in (0..dfa.k()).filter(|&a| dfa.is_permutation(a)) {
            let pre = dfa.preimage(s, a);
            prop_assert_eq!(pre.len(), s.len());
            prop_assert_eq!(dfa.image_letter(pre, a), s);
            prop_assert_eq!(dfa.preimage(dfa.image_letter(s, a), a), s);
        }
    }

    #[test]
    fn synchronizing_iff_reset_word((n, rows) in automaton(10, 3)) {
        let dfa = Dfa::new(n, &rows).unwrap();
        let word = shortest_reset_word(&dfa);
        prop_assert_eq!(dfa.is_synchronizing(), word.is_some());
        if let Some(w) = word {
            prop_assert!(check_sync_word(&dfa, &w).unwrap().is_some());
        }
    }

    #[test]
    fn layers_agree_with_forward_search((n, rows) in automaton(8, 3)) {
        let dfa = Dfa::new(n, &rows).unwrap();
        let trace = inverse_layers(&dfa, default_layer_limit(n));
        prop_assert_eq!(trace.found_at, shortest_reset_word(&dfa).map(|w| w.len()));
        prop_assert!(!trace.truncated);
        prop_assert_eq!(trace.subsumption_violation(), None);
    }

    #[test]
    fn extension_lengths_match_oracle((n, rows) in automaton(7, 3)) {
        let dfa = Dfa::new(n, &rows).unwrap();
        let lengths = extension_lengths(&dfa, 8).unwrap();
        let full = (1u32 << n) - 1;
        for mask in 1..full {
            let expected = naive_extension_length(&rows, mask);
            prop_assert_eq!(lengths[mask as usize].map(|l| l as usize), expected, "mask {:b}", mask);
        }
    }

    #[test]
    fn extending_words_are_valid_and_minimal((dfa, _, _, _, s, _) in setup()) {
        if s.is_empty() || s == dfa.full_set() {
            return Ok(());
        }
        let Some(w) = shortest_extending_word(&dfa, s).unwrap() else {
            return Ok(());
        };
        prop_assert!(dfa.preimage_word(s, &w).len() > s.len());
        // Bounded so that each case stays fast.
        if dfa.k().pow(w.len() as u32) > 1 << 16 {
            return Ok(());
        }
        for len in 0..w.len() {
            for letters in words_of_length(dfa.k(), len) {
                let u = Word::from_letters(letters);
                prop_assert!(dfa.preimage_word(s, &u).len() <= s.len(), "{} is shorter", u);
            }
        }
    }

    #[test]
    fn avoiding_words_are_valid_and_minimal((dfa, _, _, _, _, _) in setup(), pick in 0usize..8) {
        let q = pick % dfa.n();
        let Some(w) = shortest_avoiding_word(&dfa, q).unwrap() else {
            // No word avoids q: no image of Q ever misses it.
            prop_assert!(resetlab::reachable_images(&dfa).iter().all(|s| s.contains(q)));
            return Ok(());
        };
        prop_assert!(!dfa.image(dfa.full_set(), &w).contains(q));
        if dfa.k().pow(w.len() as u32) > 1 << 16 {
            return Ok(());
        }
        for len in 0..w.len() {
            for letters in words_of_length(dfa.k(), len) {
                let u = Word::from_letters(letters);
                prop_assert!(dfa.image(dfa.full_set(), &u).contains(q), "{} is shorter", u);
            }
        }
    }

    #[test]
    fn word_text_round_trip(w in word(26, 12)) {
        let parsed: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(parsed, w);
    }

    #[test]
    fn state_set_json_round_trip(mask in any::<u32>()) {
        let s = StateSet::from_mask(mask);
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<StateSet>(&json).unwrap(), s);
    }
}
