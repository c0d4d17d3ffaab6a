//! Fixture tables a fresh store is initialized with.
//!
//! The slang lexicon and concept table reproduce the experiment's seed data.
//! The sounds-alike variants are shipped by this project as a starting point;
//! they are not part of that data.

use crate::normalize::default_stopwords;
use crate::store::{ConceptEntry, LexiconEntry, SoundAlikeEntry, StoreBundle};

pub const SEED_SLANG: &[(u64, &str)] = &[
    (10, "alpha"),
    (11, "beta"),
    (12, "gamma"),
    (13, "delta"),
    (37, "epsilon"),
    (40, "lambda"),
    (41, "upsilon"),
];

pub const SEED_SOUNDALIKE: &[(&str, &str)] = &[("alfa", "alpha"), ("gama", "gamma"), ("lamda", "lambda")];

pub const SEED_CONCEPTS: &[(u64, &str, u32, &[&str])] = &[
    (
        1,
        "Movie",
        10,
        &["song", "actor", "actress", "director", "film", "camera"],
    ),
    (
        2,
        "Sports",
        7,
        &["match", "cricket", "football", "player", "ground"],
    ),
    (
        3,
        "Business",
        6,
        &["import", "export", "sell", "purchase", "shop", "market"],
    ),
    (
        4,
        "Education",
        3,
        &["teacher", "student", "subject", "class", "vacation"],
    ),
];

pub fn seed_slang() -> Vec<LexiconEntry> {
    SEED_SLANG
        .iter()
        .map(|&(id, lexeme)| LexiconEntry {
            id,
            lexeme: lexeme.to_string(),
        })
        .collect()
}

pub fn seed_concepts() -> Vec<ConceptEntry> {
    SEED_CONCEPTS
        .iter()
        .map(|&(id, name, weight, synset)| ConceptEntry {
            id,
            name: name.to_string(),
            weight,
            synset: synset.iter().map(|w| w.to_string()).collect(),
        })
        .collect()
}

pub fn seed_soundalike() -> Vec<SoundAlikeEntry> {
    SEED_SOUNDALIKE
        .iter()
        .map(|&(variant, canonical)| SoundAlikeEntry {
            variant: variant.to_string(),
            canonical: canonical.to_string(),
        })
        .collect()
}

/// Seed lexicon, concepts, sounds-alike variants and the default stop words.
pub fn seed_bundle() -> StoreBundle {
    StoreBundle::new(
        seed_slang(),
        seed_soundalike(),
        seed_concepts(),
        Vec::new(),
        default_stopwords(),
    )
    .expect("seed tables are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_shape() {
        let bundle = seed_bundle();
        assert_eq!(bundle.slang().len(), 7);
        let weights: Vec<u32> = bundle.concepts().iter().map(|c| c.weight).collect();
        assert_eq!(weights, [10, 7, 6, 3]);
        assert!(bundle.suspicious().is_empty());
    }

    #[test]
    fn synset_and_slang_words_are_not_stopwords() {
        let bundle = seed_bundle();
        for c in bundle.concepts() {
            for w in &c.synset {
                assert!(!bundle.stopwords().contains(w), "{w}");
            }
        }
        for e in bundle.slang() {
            assert!(!bundle.stopwords().contains(&e.lexeme));
        }
    }
}
