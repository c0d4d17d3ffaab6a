//! The end-to-end filter: normalize, derive the concept, run the three
//! detectors in precedence order, then feed suspicious hits to the learner.
//!
//! Detection ([`Detector::analyze`]) only reads the store and can run on many
//! texts at once. Learning ([`commit`]) mutates the suspicious table and the
//! lexicon and must be serialized by the store's single owner.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{detect_exact, ExactMatch};
use crate::learner::{derive_concept, maybe_promote, observe_suspicious, ConceptMatch, LearnerConfig};
use crate::normalize::{strip_stopwords, tokenize};
use crate::par::{map_slice, Execution};
use crate::soundalike::{SoundAlikeIndex, SoundAlikeMatch};
use crate::store::StoreBundle;
use crate::suspicious::{SuspicionHit, WindowConfig, WindowIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Blocked and NeedsRevision texts must not be forwarded.
    #[default]
    Enforce,
    /// Everything is evaluated and learned from, nothing is rejected.
    Report,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enforce" => Ok(Mode::Enforce),
            "report" => Ok(Mode::Report),
            other => Err(Error::invalid("mode", other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub mode: Mode,
    pub window: WindowConfig,
    pub learner: LearnerConfig,
    pub soundalike_fallback: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Clean,
    Blocked,
    NeedsRevision,
    Flagged,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Clean => "Clean",
            Verdict::Blocked => "Blocked",
            Verdict::NeedsRevision => "NeedsRevision",
            Verdict::Flagged => "Flagged",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub verdict: Verdict,
    /// Whether the caller may forward the text under the configured mode.
    pub accepted: bool,
    pub exact_matches: Vec<ExactMatch>,
    pub soundalike_matches: Vec<SoundAlikeMatch>,
    pub suspicion_hits: Vec<SuspicionHit>,
    pub concept: Option<ConceptMatch>,
    /// Words moved into the slang lexicon while learning from this text.
    pub promotions: Vec<String>,
}

/// Indexes over one store snapshot.
pub struct Detector<'a> {
    store: &'a StoreBundle,
    windows: WindowIndex,
    sounds: SoundAlikeIndex,
    config: PipelineConfig,
}

impl<'a> Detector<'a> {
    pub fn new(store: &'a StoreBundle, config: &PipelineConfig) -> Self {
        Detector {
            store,
            windows: WindowIndex::new(store.slang(), config.window),
            sounds: SoundAlikeIndex::new(store),
            config: *config,
        }
    }

    /// Runs detection without touching the store. `promotions` is empty.
    pub fn analyze(&self, text: &str) -> DetectionReport {
        let tokens = strip_stopwords(tokenize(text), self.store.stopwords());
        // computed for every text, consumed only on the suspicious path
        let concept = derive_concept(&tokens, self.store.concepts());

        let exact_matches = detect_exact(&tokens, self.store);
        let soundalike_matches = if exact_matches.is_empty() {
            self.sounds.detect(&tokens, self.config.soundalike_fallback)
        } else {
            Vec::new()
        };
        let suspicion_hits = if exact_matches.is_empty() && soundalike_matches.is_empty() {
            self.windows.scan_tokens(&tokens)
        } else {
            Vec::new()
        };

        let verdict = if !exact_matches.is_empty() {
            Verdict::Blocked
        } else if !soundalike_matches.is_empty() {
            Verdict::NeedsRevision
        } else if !suspicion_hits.is_empty() {
            Verdict::Flagged
        } else {
            Verdict::Clean
        };
        let accepted = match self.config.mode {
            Mode::Report => true,
            Mode::Enforce => matches!(verdict, Verdict::Clean | Verdict::Flagged),
        };

        DetectionReport {
            verdict,
            accepted,
            exact_matches,
            soundalike_matches,
            suspicion_hits,
            concept,
            promotions: Vec::new(),
        }
    }
}

/// Applies the learning updates of an analyzed text: one weighted observation
/// per suspicious hit, each followed by a promotion check.
///
/// Either every update is applied or, if the report no longer fits the store,
/// none is. A word promoted by an earlier hit of the same text is not observed
/// again.
pub fn commit(
    store: &mut StoreBundle,
    report: &mut DetectionReport,
    config: &LearnerConfig,
) -> Result<()> {
    for hit in &report.suspicion_hits {
        if store.contains_slang(&hit.word) {
            return Err(Error::AlreadySlang(hit.word.clone()));
        }
        if !store.contains_slang(&hit.matched_slang) {
            return Err(Error::DanglingMatchedSlang {
                word: hit.word.clone(),
                matched: hit.matched_slang.clone(),
            });
        }
    }
    for hit in &report.suspicion_hits {
        if store.contains_slang(&hit.word) {
            continue;
        }
        observe_suspicious(store, hit, report.concept.as_ref(), config)?;
        if maybe_promote(store, &hit.word, config)? {
            report.promotions.push(hit.word.clone());
        }
    }
    Ok(())
}

/// Filters one text and applies its learning updates.
pub fn process(text: &str, store: &mut StoreBundle, config: &PipelineConfig) -> Result<DetectionReport> {
    let mut report = Detector::new(store, config).analyze(text);
    commit(store, &mut report, &config.learner)?;
    Ok(report)
}

/// Detection only, for many texts against one snapshot.
pub fn analyze_batch<S>(
    texts: &[S],
    store: &StoreBundle,
    config: &PipelineConfig,
    exec: Execution,
) -> Vec<DetectionReport>
where
    S: AsRef<str> + Sync,
{
    let detector = Detector::new(store, config);
    map_slice(texts, exec, |t| detector.analyze(t.as_ref()))
}

const SPECULATION_CHUNK: usize = 1024;

/// Same result as calling [`process`] on each text in order.
///
/// Texts are analyzed ahead of time in parallel against the current snapshot
/// and committed in order. A promotion changes the lexicon, so analyses made
/// before it are discarded and redone against the new snapshot.
pub fn process_batch<S>(
    texts: &[S],
    store: &mut StoreBundle,
    config: &PipelineConfig,
    exec: Execution,
) -> Result<Vec<DetectionReport>>
where
    S: AsRef<str> + Sync,
{
    let mut out = Vec::with_capacity(texts.len());
    while out.len() < texts.len() {
        let start = out.len();
        let end = (start + SPECULATION_CHUNK).min(texts.len());
        let pending = analyze_batch(&texts[start..end], store, config, exec);
        for mut report in pending {
            commit(store, &mut report, &config.learner)?;
            let lexicon_changed = !report.promotions.is_empty();
            out.push(report);
            if lexicon_changed {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::seed_bundle;

    const MOVIE: &str = "The actor and the director loved the film: kalphaa bbbbetaa gaaaamaa deeeeltaa!";

    #[test]
    fn clean_text() {
        let mut store = seed_bundle();
        let r = process("The actor met the director after the film.", &mut store, &PipelineConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Clean);
        assert!(r.accepted);
        assert_eq!(r.concept.unwrap().concept.name, "Movie");
    }

    #[test]
    fn exact_blocks() {
        let mut store = seed_bundle();
        let before = store.clone();
        let r = process("an alpha story about kalphaa", &mut store, &PipelineConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Blocked);
        assert!(!r.accepted);
        assert!(r.suspicion_hits.is_empty());
        assert_eq!(store, before);
    }

    #[test]
    fn soundalike_needs_revision() {
        let mut store = seed_bundle();
        let r = process("alfa kalphaa", &mut store, &PipelineConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NeedsRevision);
        assert_eq!(r.soundalike_matches[0].canonical, "alpha");
        assert!(store.suspicious().is_empty());
    }

    #[test]
    fn fallback_flag_changes_verdict() {
        let mut store = seed_bundle();
        let mut config = PipelineConfig::default();
        let r = process("alpfa", &mut store, &config).unwrap();
        assert_eq!(r.verdict, Verdict::Clean);
        config.soundalike_fallback = true;
        let r = process("alpfa", &mut store, &config).unwrap();
        assert_eq!(r.verdict, Verdict::NeedsRevision);
    }

    #[test]
    fn movie_text_flags_four() {
        let mut store = seed_bundle();
        let r = process(MOVIE, &mut store, &PipelineConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Flagged);
        assert!(r.accepted);
        assert_eq!(r.suspicion_hits.len(), 4);
        assert_eq!(store.suspicious().len(), 4);
        assert!(store.suspicious().iter().all(|s| s.count == 1 && s.value == 10));
    }

    #[test]
    fn report_mode_accepts_everything() {
        let mut store = seed_bundle();
        let config = PipelineConfig {
            mode: Mode::Report,
            ..Default::default()
        };
        let r = process("alpha", &mut store, &config).unwrap();
        assert_eq!(r.verdict, Verdict::Blocked);
        assert!(r.accepted);
    }

    #[test]
    fn repeated_word_promoted_mid_text_is_observed_once_after() {
        let mut store = seed_bundle();
        let config = PipelineConfig {
            learner: LearnerConfig::new(20, 1).unwrap(),
            ..Default::default()
        };
        // 10 per hit: the second occurrence reaches 20 and promotes
        let r = process("film kalphaa kalphaa kalphaa", &mut store, &config).unwrap();
        assert_eq!(r.promotions, ["kalphaa"]);
        assert!(store.contains_slang("kalphaa"));
        assert!(store.suspicious().is_empty());
    }

    #[test]
    fn stale_report_is_rejected_without_changes() {
        let mut store = seed_bundle();
        let config = PipelineConfig::default();
        let mut report = Detector::new(&store, &config).analyze(MOVIE);
        store.add_slang("gaaaamaa").unwrap();
        let before = store.clone();
        assert!(commit(&mut store, &mut report, &config.learner).is_err());
        assert_eq!(store, before);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("enforce".parse::<Mode>().unwrap(), Mode::Enforce);
        assert_eq!("report".parse::<Mode>().unwrap(), Mode::Report);
        assert!("loud".parse::<Mode>().is_err());
    }
}
