//! Exact lexicon membership.

use serde::{Deserialize, Serialize};

use crate::normalize::Token;
use crate::store::StoreBundle;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatch {
    pub token_position: usize,
    pub lexeme: String,
}

/// Every token whose lexeme is in the slang lexicon, in token order.
///
/// All matches are collected; rejecting the text is the pipeline's call.
pub fn detect_exact(tokens: &[Token], store: &StoreBundle) -> Vec<ExactMatch> {
    tokens
        .iter()
        .filter(|t| store.contains_slang(&t.lexeme))
        .map(|t| ExactMatch {
            token_position: t.position,
            lexeme: t.lexeme.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::tokenize;
    use crate::seed::seed_bundle;
    use crate::store::{LexiconEntry, StoreBundle};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn finds_alpha() {
        let store = seed_bundle();
        let hits = detect_exact(&tokenize("alpha story"), &store);
        assert_eq!(
            hits,
            [ExactMatch {
                token_position: 0,
                lexeme: "alpha".into()
            }]
        );
    }

    #[test]
    fn empty_and_near_misses() {
        let store = seed_bundle();
        assert!(detect_exact(&[], &store).is_empty());
        assert!(detect_exact(&tokenize("alphax"), &store).is_empty());
        assert!(detect_exact(&tokenize("bbbbetaa"), &store).is_empty());
    }

    #[test]
    fn reports_every_match() {
        let store = seed_bundle();
        let hits = detect_exact(&tokenize("alpha and beta, then ALPHA."), &store);
        let got: Vec<_> = hits
            .iter()
            .map(|h| (h.token_position, h.lexeme.as_str()))
            .collect();
        assert_eq!(got, [(0, "alpha"), (2, "beta"), (4, "alpha")]);
    }

    fn bundle_of(words: &BTreeSet<String>) -> StoreBundle {
        let slang = words
            .iter()
            .enumerate()
            .map(|(i, w)| LexiconEntry {
                id: i as u64 + 1,
                lexeme: w.clone(),
            })
            .collect();
        StoreBundle::new(slang, vec![], vec![], vec![], BTreeSet::new()).unwrap()
    }

    proptest! {
        #[test]
        fn agrees_with_naive_loop(
            lexicon in proptest::collection::btree_set("[ab]{1,3}", 0..6),
            text in proptest::collection::vec("[ab]{1,3}", 0..12),
        ) {
            let store = bundle_of(&lexicon);
            let tokens = tokenize(&text.join(" "));
            let mut naive = Vec::new();
            for t in &tokens {
                for w in &lexicon {
                    if *w == t.lexeme {
                        naive.push((t.position, w.clone()));
                        break;
                    }
                }
            }
            let got: Vec<_> = detect_exact(&tokens, &store)
                .into_iter()
                .map(|m| (m.token_position, m.lexeme))
                .collect();
            prop_assert_eq!(got, naive);
        }

        #[test]
        fn monotone_in_lexicon(
            lexicon in proptest::collection::btree_set("[ab]{1,3}", 0..6),
            extra in "[ab]{1,3}",
            text in proptest::collection::vec("[ab]{1,3}", 0..12),
        ) {
            let tokens = tokenize(&text.join(" "));
            let before = detect_exact(&tokens, &bundle_of(&lexicon));
            let mut bigger = lexicon.clone();
            bigger.insert(extra);
            let after = detect_exact(&tokens, &bundle_of(&bigger));
            for m in before {
                prop_assert!(after.contains(&m));
            }
        }
    }
}
