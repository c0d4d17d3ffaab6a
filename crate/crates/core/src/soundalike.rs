//! Sounds-alike detection: a curated variant table, optionally backed by a
//! Soundex phonetic fallback.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::normalize::Token;
use crate::store::StoreBundle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchSource {
    Table,
    Phonetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundAlikeMatch {
    pub token_position: usize,
    pub variant: String,
    pub canonical: String,
    pub source: MatchSource,
}

/// A Soundex code: an uppercase letter followed by three digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhoneticKey([u8; 4]);

impl PhoneticKey {
    pub fn as_str(&self) -> &str {
        // built only from ASCII bytes
        std::str::from_utf8(&self.0).expect("ascii key")
    }
}

impl fmt::Display for PhoneticKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for PhoneticKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhoneticKey({})", self.as_str())
    }
}

impl Serialize for PhoneticKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn soundex_digit(c: u8) -> Option<u8> {
    match c {
        b'b' | b'f' | b'p' | b'v' => Some(b'1'),
        b'c' | b'g' | b'j' | b'k' | b'q' | b's' | b'x' | b'z' => Some(b'2'),
        b'd' | b't' => Some(b'3'),
        b'l' => Some(b'4'),
        b'm' | b'n' => Some(b'5'),
        b'r' => Some(b'6'),
        _ => None,
    }
}

/// Soundex key of `lexeme`.
///
/// Non-letters are dropped first. Vowels, `y`, `h` and `w` are dropped before
/// adjacent equal codes collapse, so they never separate two equal codes.
pub fn phonetic_key(lexeme: &str) -> Result<PhoneticKey> {
    let mut letters = lexeme
        .bytes()
        .filter(u8::is_ascii_alphabetic)
        .map(|b| b.to_ascii_lowercase());
    let first = letters
        .next()
        .ok_or_else(|| Error::NotAlphabetic(lexeme.to_string()))?;

    let mut key = [first.to_ascii_uppercase(), b'0', b'0', b'0'];
    let mut filled = 1;
    let mut last = soundex_digit(first);
    for c in letters {
        let Some(d) = soundex_digit(c) else { continue };
        if last != Some(d) {
            key[filled] = d;
            filled += 1;
            if filled == key.len() {
                break;
            }
        }
        last = Some(d);
    }
    Ok(PhoneticKey(key))
}

/// Lookup structures for one lexicon snapshot.
#[derive(Debug, Clone)]
pub struct SoundAlikeIndex {
    variants: HashMap<String, String>,
    keys: HashMap<PhoneticKey, (u64, String)>,
}

impl SoundAlikeIndex {
    pub fn new(store: &StoreBundle) -> Self {
        let variants = store
            .soundalike()
            .iter()
            .map(|e| (e.variant.clone(), e.canonical.clone()))
            .collect();
        let mut keys: HashMap<PhoneticKey, (u64, String)> = HashMap::new();
        for entry in store.slang() {
            let Ok(key) = phonetic_key(&entry.lexeme) else { continue };
            match keys.get(&key) {
                Some((id, _)) if *id <= entry.id => {}
                _ => {
                    keys.insert(key, (entry.id, entry.lexeme.clone()));
                }
            }
        }
        SoundAlikeIndex { variants, keys }
    }

    pub fn lookup_variant(&self, token: &Token) -> Option<SoundAlikeMatch> {
        self.variants
            .get(&token.lexeme)
            .map(|canonical| SoundAlikeMatch {
                token_position: token.position,
                variant: token.lexeme.clone(),
                canonical: canonical.clone(),
                source: MatchSource::Table,
            })
    }

    pub fn lookup_phonetic(&self, token: &Token) -> Option<SoundAlikeMatch> {
        let key = phonetic_key(&token.lexeme).ok()?;
        self.keys.get(&key).map(|(_, canonical)| SoundAlikeMatch {
            token_position: token.position,
            variant: token.lexeme.clone(),
            canonical: canonical.clone(),
            source: MatchSource::Phonetic,
        })
    }

    /// Table lookup first, then the phonetic fallback when enabled.
    pub fn detect(&self, tokens: &[Token], fallback_enabled: bool) -> Vec<SoundAlikeMatch> {
        tokens
            .iter()
            .filter_map(|t| {
                self.lookup_variant(t).or_else(|| {
                    if fallback_enabled {
                        self.lookup_phonetic(t)
                    } else {
                        None
                    }
                })
            })
            .collect()
    }
}

pub fn lookup_variant(token: &Token, store: &StoreBundle) -> Option<SoundAlikeMatch> {
    store
        .soundalike()
        .iter()
        .find(|e| e.variant == token.lexeme)
        .map(|e| SoundAlikeMatch {
            token_position: token.position,
            variant: token.lexeme.clone(),
            canonical: e.canonical.clone(),
            source: MatchSource::Table,
        })
}

pub fn detect_soundalike(
    tokens: &[Token],
    store: &StoreBundle,
    fallback_enabled: bool,
) -> Vec<SoundAlikeMatch> {
    SoundAlikeIndex::new(store).detect(tokens, fallback_enabled)
}
