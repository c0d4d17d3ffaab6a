//! Sliding-window partial matching against the slang lexicon.
//!
//! A word is suspicious when some window of `L` consecutive characters of its
//! run-collapsed form occurs inside the run-collapsed form of a slang lexeme.
//! Both sides are collapsed so elongated spellings ("gaaaamaa") line up with
//! their lexeme ("gamma" -> "gama").
//!
//! [`WindowIndex`] precomputes every length-`L` substring of every collapsed
//! lexeme, so scanning a word costs one hash lookup per window position.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normalize::{collapse_unchecked, Token};
use crate::store::LexiconEntry;

pub const DEFAULT_WINDOW_LENGTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct WindowConfig {
    length: usize,
}

impl WindowConfig {
    pub fn new(length: usize) -> Result<Self> {
        if length < 2 {
            return Err(Error::invalid(
                "window length",
                format!("{length} (must be at least 2)"),
            ));
        }
        Ok(WindowConfig { length })
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            length: DEFAULT_WINDOW_LENGTH,
        }
    }
}

impl TryFrom<usize> for WindowConfig {
    type Error = Error;

    fn try_from(length: usize) -> Result<Self> {
        WindowConfig::new(length)
    }
}

impl From<WindowConfig> for usize {
    fn from(c: WindowConfig) -> usize {
        c.length
    }
}

/// First matching window of one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordHit {
    pub word: String,
    pub matched_slang: String,
    pub window: String,
    /// Character offset of the window in the collapsed word.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspicionHit {
    pub token_position: usize,
    pub word: String,
    pub matched_slang: String,
    pub window: String,
    pub offset: usize,
}

/// Every length-`L` window of the collapsed lexicon, mapped to the lowest-id
/// lexeme containing it.
#[derive(Debug, Clone)]
pub struct WindowIndex {
    config: WindowConfig,
    windows: HashMap<String, (u64, String)>,
}

fn char_windows(s: &str, len: usize) -> impl Iterator<Item = (usize, &str)> {
    let bounds: Vec<usize> = s
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(s.len()))
        .collect();
    let count = bounds.len().saturating_sub(len);
    (0..count).map(move |i| (i, &s[bounds[i]..bounds[i + len]]))
}

impl WindowIndex {
    pub fn new(slang: &[LexiconEntry], config: WindowConfig) -> Self {
        let mut windows: HashMap<String, (u64, String)> = HashMap::new();
        for entry in slang {
            let collapsed = collapse_unchecked(&entry.lexeme);
            for (_, w) in char_windows(&collapsed, config.length) {
                match windows.get(w) {
                    Some((id, _)) if *id <= entry.id => {}
                    _ => {
                        windows.insert(w.to_string(), (entry.id, entry.lexeme.clone()));
                    }
                }
            }
        }
        WindowIndex { config, windows }
    }

    pub fn config(&self) -> WindowConfig {
        self.config
    }

    /// Slides the window from offset 0 and returns the first hit.
    pub fn scan_word(&self, word: &str) -> Option<WordHit> {
        let collapsed = collapse_unchecked(word);
        let hit = char_windows(&collapsed, self.config.length).find_map(|(offset, w)| {
            self.windows.get(w).map(|(_, lexeme)| WordHit {
                word: word.to_string(),
                matched_slang: lexeme.clone(),
                window: w.to_string(),
                offset,
            })
        });
        hit
    }

    /// One hit per suspicious token, in token order.
    pub fn scan_tokens(&self, tokens: &[Token]) -> Vec<SuspicionHit> {
        tokens
            .iter()
            .filter_map(|t| {
                self.scan_word(&t.lexeme).map(|h| SuspicionHit {
                    token_position: t.position,
                    word: h.word,
                    matched_slang: h.matched_slang,
                    window: h.window,
                    offset: h.offset,
                })
            })
            .collect()
    }
}

pub fn scan_word(word: &str, slang: &[LexiconEntry], config: WindowConfig) -> Option<WordHit> {
    WindowIndex::new(slang, config).scan_word(word)
}

pub fn scan_tokens(
    tokens: &[Token],
    slang: &[LexiconEntry],
    config: WindowConfig,
) -> Vec<SuspicionHit> {
    WindowIndex::new(slang, config).scan_tokens(tokens)
}
