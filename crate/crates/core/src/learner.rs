//! Concept derivation by synset overlap, weighted evidence accumulation and
//! threshold promotion of suspicious words.

use std::cmp::Reverse;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normalize::Token;
use crate::store::{ConceptEntry, StoreBundle, SuspiciousRecord};
use crate::suspicious::SuspicionHit;

pub const DEFAULT_THRESHOLD: u64 = 50;
pub const DEFAULT_WEIGHT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptMatch {
    pub concept: ConceptEntry,
    /// Distinct text words found in the concept's synset. Always at least 1.
    pub overlap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnerConfig {
    threshold: u64,
    default_weight: u32,
}

impl LearnerConfig {
    pub fn new(threshold: u64, default_weight: u32) -> Result<Self> {
        if threshold == 0 {
            return Err(Error::invalid("threshold", "must be at least 1"));
        }
        if default_weight == 0 {
            return Err(Error::invalid("default weight", "must be at least 1"));
        }
        Ok(LearnerConfig {
            threshold,
            default_weight,
        })
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn default_weight(&self) -> u32 {
        self.default_weight
    }
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            threshold: DEFAULT_THRESHOLD,
            default_weight: DEFAULT_WEIGHT,
        }
    }
}

/// The concept whose synset shares the most distinct words with `tokens`.
///
/// Ties go to the higher weight, then the lower id. `None` when nothing
/// overlaps.
pub fn derive_concept(tokens: &[Token], concepts: &[ConceptEntry]) -> Option<ConceptMatch> {
    let words: HashSet<&str> = tokens.iter().map(|t| t.lexeme.as_str()).collect();
    concepts
        .iter()
        .map(|c| {
            let overlap = c
                .synset
                .iter()
                .filter(|w| words.contains(w.as_str()))
                .count();
            (c, overlap)
        })
        .filter(|&(_, overlap)| overlap > 0)
        .max_by_key(|&(c, overlap)| (overlap, c.weight, Reverse(c.id)))
        .map(|(c, overlap)| ConceptMatch {
            concept: c.clone(),
            overlap,
        })
}

/// Weight a suspicious observation contributes in the given context.
pub fn observation_weight(concept: Option<&ConceptMatch>, config: &LearnerConfig) -> u32 {
    concept.map_or(config.default_weight, |m| m.concept.weight)
}

/// Adds one weighted observation of `hit.word` to the suspicious table.
pub fn observe_suspicious(
    store: &mut StoreBundle,
    hit: &SuspicionHit,
    concept: Option<&ConceptMatch>,
    config: &LearnerConfig,
) -> Result<SuspiciousRecord> {
    let weight = observation_weight(concept, config);
    store.upsert_suspicious(&hit.word, &hit.matched_slang, weight)
}

/// Moves `word` into the slang lexicon once its value reaches the threshold.
pub fn maybe_promote(store: &mut StoreBundle, word: &str, config: &LearnerConfig) -> Result<bool> {
    let record = store
        .suspicious_record(word)
        .ok_or_else(|| Error::UnknownSuspicious(word.to_string()))?;
    if record.value < config.threshold {
        return Ok(false);
    }
    store.add_slang(word)
}
