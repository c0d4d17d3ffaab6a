//! Slang screening for electronic text, with a lexicon that learns.
//!
//! A text is tokenized and stripped of stop words, then checked in order for
//! exact slang lexemes, sounds-alike variants, and words that partially match
//! a lexeme under a fixed-length sliding window. Partial matches accumulate
//! evidence weighted by the concept of the text they appear in; once a word's
//! evidence reaches the threshold it joins the slang lexicon.
//!
//! ```
//! use slangguard_core::{process, seed::seed_bundle, PipelineConfig, Verdict};
//!
//! let mut store = seed_bundle();
//! let config = PipelineConfig::default();
//! let report = process("the film kalphaa", &mut store, &config).unwrap();
//! assert_eq!(report.verdict, Verdict::Flagged);
//! assert_eq!(store.suspicious_record("kalphaa").unwrap().value, 10);
//! ```

pub mod error;
pub mod exact;
pub mod handle;
pub mod learner;
pub mod normalize;
pub mod par;
pub mod pipeline;
pub mod review;
pub mod seed;
pub mod soundalike;
pub mod store;
pub mod suspicious;

pub use error::{Error, Result};
pub use exact::{detect_exact, ExactMatch};
pub use handle::Store;
pub use learner::{derive_concept, maybe_promote, observe_suspicious, ConceptMatch, LearnerConfig};
pub use normalize::{collapse_runs, default_stopwords, strip_stopwords, tokenize, Token};
pub use par::Execution;
pub use pipeline::{
    analyze_batch, commit, process, process_batch, DetectionReport, Detector, Mode, PipelineConfig,
    Verdict,
};
pub use review::{apply_review, ReviewAction, ReviewDecision};
pub use soundalike::{
    detect_soundalike, lookup_variant, phonetic_key, MatchSource, PhoneticKey, SoundAlikeIndex,
    SoundAlikeMatch,
};
pub use store::{
    load_store, persist_store, ConceptEntry, LexiconEntry, SoundAlikeEntry, StoreBundle,
    SuspiciousRecord,
};
pub use suspicious::{scan_tokens, scan_word, SuspicionHit, WindowConfig, WindowIndex, WordHit};
