//! The four persistent tables and their on-disk layout.
//!
//! A store directory holds one JSON-lines file per table plus a stop-word list:
//!
//! ```text
//! slang.jsonl       {"id":10,"lexeme":"alpha"}
//! soundalike.jsonl  {"variant":"alfa","canonical":"alpha"}
//! concepts.jsonl    {"id":1,"name":"Movie","weight":10,"synset":["song","actor"]}
//! suspicious.jsonl  {"id":1,"word":"kalphaa","count":1,"value":10,"matched_slang":"alpha"}
//! stopwords.txt     one lowercase word per line, '#' starts a comment
//! ```
//!
//! Missing table files load as empty tables; `stopwords.txt` is required.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SLANG_FILE: &str = "slang.jsonl";
pub const SOUNDALIKE_FILE: &str = "soundalike.jsonl";
pub const CONCEPTS_FILE: &str = "concepts.jsonl";
pub const SUSPICIOUS_FILE: &str = "suspicious.jsonl";
pub const STOPWORDS_FILE: &str = "stopwords.txt";

/// A known slang lexeme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub id: u64,
    pub lexeme: String,
}

/// An abbreviated or variant spelling of a slang lexeme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundAlikeEntry {
    pub variant: String,
    pub canonical: String,
}

/// A named concept, its synset and the weight added to suspicious words seen
/// in texts about it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptEntry {
    pub id: u64,
    pub name: String,
    pub weight: u32,
    pub synset: Vec<String>,
}

/// Accumulated evidence for a word that partially matched a slang lexeme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspiciousRecord {
    pub id: u64,
    pub word: String,
    /// Number of observations.
    pub count: u64,
    /// Sum of the weights of all observations.
    pub value: u64,
    pub matched_slang: String,
}

/// Lowercases and checks a word for use as a table key.
pub fn normalize_lexeme(word: &str) -> Result<String> {
    if word.is_empty() {
        return Err(Error::EmptyLexeme);
    }
    if word.chars().any(char::is_whitespace) {
        return Err(Error::InvalidLexeme(word.to_string()));
    }
    Ok(word.to_lowercase())
}

/// All tables of a store, held in memory.
///
/// Mutations go through `&mut self` methods that keep every cross-table
/// invariant; a bundle shared behind `&` is a consistent read snapshot.
#[derive(Debug, Clone, Default)]
pub struct StoreBundle {
    slang: Vec<LexiconEntry>,
    soundalike: Vec<SoundAlikeEntry>,
    concepts: Vec<ConceptEntry>,
    suspicious: Vec<SuspiciousRecord>,
    stopwords: BTreeSet<String>,

    slang_index: HashMap<String, usize>,
    suspicious_index: HashMap<String, usize>,
    slang_ids: HashSet<u64>,
    suspicious_ids: HashSet<u64>,
    next_slang_id: u64,
    next_suspicious_id: u64,
}

// The id counters and lookup maps are derived state.
impl PartialEq for StoreBundle {
    fn eq(&self, other: &Self) -> bool {
        self.slang == other.slang
            && self.soundalike == other.soundalike
            && self.concepts == other.concepts
            && self.suspicious == other.suspicious
            && self.stopwords == other.stopwords
    }
}

impl Eq for StoreBundle {}

impl StoreBundle {
    /// Builds a bundle from raw tables, normalizing lexemes and rejecting any
    /// invariant violation.
    pub fn new(
        slang: Vec<LexiconEntry>,
        soundalike: Vec<SoundAlikeEntry>,
        concepts: Vec<ConceptEntry>,
        suspicious: Vec<SuspiciousRecord>,
        stopwords: BTreeSet<String>,
    ) -> Result<Self> {
        let mut bundle = StoreBundle::default();
        for entry in slang {
            bundle.insert_slang_entry(entry)?;
        }
        for entry in soundalike {
            bundle.insert_soundalike_entry(entry)?;
        }
        for entry in concepts {
            bundle.insert_concept_entry(entry)?;
        }
        for record in suspicious {
            bundle.insert_suspicious_record(record)?;
        }
        for word in stopwords {
            bundle.stopwords.insert(normalize_lexeme(&word)?);
        }
        Ok(bundle)
    }

    pub fn slang(&self) -> &[LexiconEntry] {
        &self.slang
    }

    pub fn soundalike(&self) -> &[SoundAlikeEntry] {
        &self.soundalike
    }

    pub fn concepts(&self) -> &[ConceptEntry] {
        &self.concepts
    }

    pub fn suspicious(&self) -> &[SuspiciousRecord] {
        &self.suspicious
    }

    pub fn stopwords(&self) -> &BTreeSet<String> {
        &self.stopwords
    }

    pub fn contains_slang(&self, lexeme: &str) -> bool {
        self.slang_index.contains_key(lexeme)
    }

    pub fn slang_entry(&self, lexeme: &str) -> Option<&LexiconEntry> {
        self.slang_index.get(lexeme).map(|&i| &self.slang[i])
    }

    pub fn suspicious_record(&self, word: &str) -> Option<&SuspiciousRecord> {
        self.suspicious_index.get(word).map(|&i| &self.suspicious[i])
    }

    /// Adds `lexeme` to the slang lexicon with the next free id.
    ///
    /// Returns `false` without changes if it is already present. A suspicious
    /// record for the same word is dropped.
    pub fn add_slang(&mut self, lexeme: &str) -> Result<bool> {
        let lexeme = normalize_lexeme(lexeme)?;
        if self.contains_slang(&lexeme) {
            return Ok(false);
        }
        self.remove_suspicious(&lexeme);
        let id = self.next_slang_id.max(1);
        self.insert_slang_entry(LexiconEntry { id, lexeme })?;
        Ok(true)
    }

    /// Records one observation of `word` with `weight`.
    pub fn upsert_suspicious(
        &mut self,
        word: &str,
        matched_slang: &str,
        weight: u32,
    ) -> Result<SuspiciousRecord> {
        let word = normalize_lexeme(word)?;
        if weight == 0 {
            return Err(Error::invalid("weight", "must be at least 1"));
        }
        if self.contains_slang(&word) {
            return Err(Error::AlreadySlang(word));
        }
        if let Some(&i) = self.suspicious_index.get(&word) {
            let record = &mut self.suspicious[i];
            record.count += 1;
            record.value += u64::from(weight);
            return Ok(record.clone());
        }
        if !self.contains_slang(matched_slang) {
            return Err(Error::DanglingMatchedSlang {
                word,
                matched: matched_slang.to_string(),
            });
        }
        let record = SuspiciousRecord {
            id: self.next_suspicious_id.max(1),
            word,
            count: 1,
            value: u64::from(weight),
            matched_slang: matched_slang.to_string(),
        };
        self.insert_suspicious_record(record.clone())?;
        Ok(record)
    }

    /// Removes and returns the record for `word`, if any.
    pub fn remove_suspicious(&mut self, word: &str) -> Option<SuspiciousRecord> {
        let i = self.suspicious_index.remove(word)?;
        let record = self.suspicious.remove(i);
        for slot in self.suspicious_index.values_mut() {
            if *slot > i {
                *slot -= 1;
            }
        }
        Some(record)
    }

    /// Appends a sounds-alike variant for an existing slang lexeme.
    pub fn add_soundalike(&mut self, variant: &str, canonical: &str) -> Result<()> {
        self.insert_soundalike_entry(SoundAlikeEntry {
            variant: variant.to_string(),
            canonical: canonical.to_string(),
        })
    }

    /// Re-checks every invariant. Bundles built through the public API always
    /// pass; this guards persistence.
    pub fn validate(&self) -> Result<()> {
        StoreBundle::new(
            self.slang.clone(),
            self.soundalike.clone(),
            self.concepts.clone(),
            self.suspicious.clone(),
            self.stopwords.clone(),
        )
        .map(|_| ())
    }

    fn insert_slang_entry(&mut self, mut entry: LexiconEntry) -> Result<()> {
        entry.lexeme = normalize_lexeme(&entry.lexeme)?;
        if entry.id == 0 {
            return Err(Error::invalid("slang id", "ids start at 1"));
        }
        if !self.slang_ids.insert(entry.id) {
            return Err(Error::DuplicateId {
                table: "slang",
                id: entry.id,
            });
        }
        if self.slang_index.contains_key(&entry.lexeme) {
            return Err(Error::DuplicateLexeme(entry.lexeme));
        }
        self.next_slang_id = self.next_slang_id.max(entry.id + 1);
        self.slang_index
            .insert(entry.lexeme.clone(), self.slang.len());
        self.slang.push(entry);
        Ok(())
    }

    fn insert_soundalike_entry(&mut self, mut entry: SoundAlikeEntry) -> Result<()> {
        entry.variant = normalize_lexeme(&entry.variant)?;
        entry.canonical = normalize_lexeme(&entry.canonical)?;
        if self.soundalike.iter().any(|e| e.variant == entry.variant) {
            return Err(Error::DuplicateVariant(entry.variant));
        }
        if !self.contains_slang(&entry.canonical) {
            return Err(Error::DanglingCanonical {
                variant: entry.variant,
                canonical: entry.canonical,
            });
        }
        self.soundalike.push(entry);
        Ok(())
    }

    fn insert_concept_entry(&mut self, mut entry: ConceptEntry) -> Result<()> {
        if entry.id == 0 {
            return Err(Error::invalid("concept id", "ids start at 1"));
        }
        if self.concepts.iter().any(|c| c.id == entry.id) {
            return Err(Error::DuplicateId {
                table: "concepts",
                id: entry.id,
            });
        }
        if entry.weight == 0 {
            return Err(Error::invalid(
                "concept weight",
                format!("concept {} has weight 0", entry.name),
            ));
        }
        if entry.synset.is_empty() {
            return Err(Error::invalid(
                "synset",
                format!("concept {} has an empty synset", entry.name),
            ));
        }
        let mut seen = HashSet::new();
        for word in entry.synset.iter_mut() {
            *word = normalize_lexeme(word)?;
            if !seen.insert(word.clone()) {
                return Err(Error::invalid(
                    "synset",
                    format!("{word:?} repeated in concept {}", entry.name),
                ));
            }
        }
        self.concepts.push(entry);
        Ok(())
    }

    fn insert_suspicious_record(&mut self, mut record: SuspiciousRecord) -> Result<()> {
        record.word = normalize_lexeme(&record.word)?;
        record.matched_slang = normalize_lexeme(&record.matched_slang)?;
        if record.id == 0 {
            return Err(Error::invalid("suspicious id", "ids start at 1"));
        }
        if record.count == 0 || record.value < record.count {
            return Err(Error::invalid(
                "suspicious record",
                format!(
                    "{:?} has count {} and value {}",
                    record.word, record.count, record.value
                ),
            ));
        }
        if self.suspicious_ids.contains(&record.id) {
            return Err(Error::DuplicateId {
                table: "suspicious",
                id: record.id,
            });
        }
        if self.suspicious_index.contains_key(&record.word) {
            return Err(Error::DuplicateSuspicious(record.word));
        }
        if self.contains_slang(&record.word) {
            return Err(Error::AlreadySlang(record.word));
        }
        if !self.contains_slang(&record.matched_slang) {
            return Err(Error::DanglingMatchedSlang {
                word: record.word,
                matched: record.matched_slang,
            });
        }
        self.suspicious_ids.insert(record.id);
        self.next_suspicious_id = self.next_suspicious_id.max(record.id + 1);
        self.suspicious_index
            .insert(record.word.clone(), self.suspicious.len());
        self.suspicious.push(record);
        Ok(())
    }
}

fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(path, e)),
    };
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| Error::Malformed {
                file: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Parses the stop-word file format.
pub fn parse_stopwords(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

fn read_stopwords(path: &Path) -> Result<BTreeSet<String>> {
    match fs::read_to_string(path) {
        Ok(text) => {
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if !line.starts_with('#') && line.chars().any(char::is_whitespace) {
                    return Err(Error::Malformed {
                        file: path.to_path_buf(),
                        line: i + 1,
                        message: "expected one word per line".into(),
                    });
                }
            }
            Ok(parse_stopwords(&text))
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            Err(Error::MissingStopwords(path.to_path_buf()))
        }
        Err(e) => Err(Error::io(path, e)),
    }
}

/// Loads a store directory. Missing table files are empty tables.
pub fn load_store(dir: impl AsRef<Path>) -> Result<StoreBundle> {
    let dir = dir.as_ref();
    let stopwords = read_stopwords(&dir.join(STOPWORDS_FILE))?;
    StoreBundle::new(
        read_jsonl(&dir.join(SLANG_FILE))?,
        read_jsonl(&dir.join(SOUNDALIKE_FILE))?,
        read_jsonl(&dir.join(CONCEPTS_FILE))?,
        read_jsonl(&dir.join(SUSPICIOUS_FILE))?,
        stopwords,
    )
}

fn jsonl<T: Serialize>(rows: &[T]) -> String {
    let mut out = String::new();
    for row in rows {
        // plain structs of strings and integers always serialize
        out.push_str(&serde_json::to_string(row).expect("table row serializes"));
        out.push('\n');
    }
    out
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub(crate) fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Writes every table of `bundle` into `dir`, creating it if needed.
///
/// The bundle is validated first; an invalid bundle writes nothing.
pub fn persist_store(bundle: &StoreBundle, dir: impl AsRef<Path>) -> Result<()> {
    bundle.validate()?;
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let mut stopwords = String::new();
    for word in &bundle.stopwords {
        stopwords.push_str(word);
        stopwords.push('\n');
    }
    let files: [(&str, String); 5] = [
        (SLANG_FILE, jsonl(&bundle.slang)),
        (SOUNDALIKE_FILE, jsonl(&bundle.soundalike)),
        (CONCEPTS_FILE, jsonl(&bundle.concepts)),
        (SUSPICIOUS_FILE, jsonl(&bundle.suspicious)),
        (STOPWORDS_FILE, stopwords),
    ];
    for (name, contents) in files {
        write_atomic(&dir.join(name), contents.as_bytes())?;
    }
    Ok(())
}

/// Paths of the files a store directory may contain.
pub fn store_files(dir: &Path) -> Vec<PathBuf> {
    [
        SLANG_FILE,
        SOUNDALIKE_FILE,
        CONCEPTS_FILE,
        SUSPICIOUS_FILE,
        STOPWORDS_FILE,
    ]
    .iter()
    .map(|name| dir.join(name))
    .collect()
}
