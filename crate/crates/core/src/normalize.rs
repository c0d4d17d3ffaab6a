//! Tokenization, stop-word elimination and character-run collapsing.
//!
//! The output of [`tokenize`] followed by [`strip_stopwords`] is the list of
//! meaningful words every detector and the concept learner operate on.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One word of an input text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// Surface form as it appeared between whitespace.
    pub raw: String,
    /// Lowercased form with edge punctuation removed. Never empty.
    pub lexeme: String,
    /// 0-based index among the emitted tokens of the text.
    pub position: usize,
}

/// Splits on Unicode whitespace, strips leading/trailing non-alphanumeric
/// characters, lowercases, and drops pieces that end up empty.
///
/// Intra-word punctuation such as hyphens and apostrophes is kept.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split_whitespace()
        .filter_map(|raw| {
            let trimmed = raw.trim_matches(|c: char| !c.is_alphanumeric());
            if trimmed.is_empty() {
                None
            } else {
                Some((raw, trimmed.to_lowercase()))
            }
        })
        .enumerate()
        .map(|(position, (raw, lexeme))| Token {
            raw: raw.to_string(),
            lexeme,
            position,
        })
        .collect()
}

/// Drops every token whose lexeme is a stop word. Order and positions are kept.
pub fn strip_stopwords(tokens: Vec<Token>, stopwords: &BTreeSet<String>) -> Vec<Token> {
    if stopwords.is_empty() {
        return tokens;
    }
    tokens
        .into_iter()
        .filter(|t| !stopwords.contains(&t.lexeme))
        .collect()
}

/// Replaces every maximal run of one repeated character with a single
/// occurrence: `"gaaaamaa"` becomes `"gama"`.
pub fn collapse_runs(lexeme: &str) -> Result<String> {
    if lexeme.is_empty() {
        return Err(Error::EmptyLexeme);
    }
    Ok(collapse_unchecked(lexeme))
}

pub(crate) fn collapse_unchecked(word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    let mut last = None;
    for c in word.chars() {
        if last != Some(c) {
            out.push(c);
            last = Some(c);
        }
    }
    out
}

const DEFAULT_STOPWORDS: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
    "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
    "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just",
    "me", "might", "more", "most", "must", "my", "myself", "no", "nor", "not", "now", "of", "off",
    "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same",
    "shall", "she", "should", "so", "some", "such", "than", "that", "the", "their", "theirs",
    "them", "themselves", "then", "there", "these", "they", "this", "those", "through", "to",
    "too", "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
    "yourselves",
];

/// The shipped English function-word list.
pub fn default_stopwords() -> BTreeSet<String> {
    DEFAULT_STOPWORDS.iter().map(|w| w.to_string()).collect()
}
