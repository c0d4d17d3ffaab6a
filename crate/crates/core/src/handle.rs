//! A store directory together with its loaded tables.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::pipeline::{commit, Detector, DetectionReport, PipelineConfig};
use crate::review::{append_audit, apply_review, read_audit, ReviewAction, ReviewDecision};
use crate::seed::seed_bundle;
use crate::store::{load_store, persist_store, StoreBundle};

/// Owner of a store directory. Every mutating call persists before it
/// returns; if persisting fails the in-memory tables are left unchanged.
#[derive(Debug, Clone)]
pub struct Store {
    dir: PathBuf,
    bundle: StoreBundle,
}

impl Store {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        let bundle = load_store(&dir)?;
        Ok(Store { dir, bundle })
    }

    /// Creates a seeded store in an empty or absent directory.
    pub fn init(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        match std::fs::read_dir(&dir) {
            Ok(mut entries) => {
                if entries.next().is_some() {
                    return Err(Error::NotEmpty(dir));
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(Error::io(&dir, e)),
        }
        let bundle = seed_bundle();
        persist_store(&bundle, &dir)?;
        Ok(Store { dir, bundle })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn bundle(&self) -> &StoreBundle {
        &self.bundle
    }

    /// Filters `text`; learning updates are persisted.
    pub fn filter(&mut self, text: &str, config: &PipelineConfig) -> Result<DetectionReport> {
        let mut report = Detector::new(&self.bundle, config).analyze(text);
        if report.suspicion_hits.is_empty() {
            return Ok(report);
        }
        let mut next = self.bundle.clone();
        commit(&mut next, &mut report, &config.learner)?;
        persist_store(&next, &self.dir)?;
        self.bundle = next;
        Ok(report)
    }

    /// Applies and persists a review decision, then appends it to the audit log.
    pub fn review(&mut self, word: &str, action: ReviewAction) -> Result<ReviewDecision> {
        let decision = ReviewDecision::now(word, action);
        let mut next = self.bundle.clone();
        apply_review(&mut next, &decision)?;
        if next != self.bundle {
            persist_store(&next, &self.dir)?;
        }
        append_audit(&self.dir, &decision)?;
        self.bundle = next;
        Ok(decision)
    }

    pub fn audit(&self) -> Result<Vec<ReviewDecision>> {
        read_audit(&self.dir)
    }

    pub fn save(&self) -> Result<()> {
        persist_store(&self.bundle, &self.dir)
    }
}
