//! Human review decisions on suspicious words and their audit log.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use chrono::{DateTime, SecondsFormat, SubsecRound, Utc};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::store::StoreBundle;

pub const AUDIT_FILE: &str = "audit.jsonl";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReviewAction {
    Confirm,
    Dismiss,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewDecision {
    pub word: String,
    pub action: ReviewAction,
    #[serde(serialize_with = "iso8601", deserialize_with = "parse_iso8601")]
    pub decided_at: DateTime<Utc>,
}

impl ReviewDecision {
    pub fn now(word: impl Into<String>, action: ReviewAction) -> Self {
        ReviewDecision {
            word: word.into(),
            action,
            decided_at: Utc::now().trunc_subsecs(0),
        }
    }
}

fn iso8601<S: Serializer>(t: &DateTime<Utc>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_rfc3339_opts(SecondsFormat::Secs, true))
}

fn parse_iso8601<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<DateTime<Utc>, D::Error> {
    let s = String::deserialize(d)?;
    DateTime::parse_from_rfc3339(&s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(serde::de::Error::custom)
}

/// Confirm promotes the word into the slang lexicon; dismiss leaves the
/// record as it is so evidence keeps accumulating.
pub fn apply_review(store: &mut StoreBundle, decision: &ReviewDecision) -> Result<()> {
    if store.suspicious_record(&decision.word).is_none() {
        return Err(Error::UnknownSuspicious(decision.word.clone()));
    }
    match decision.action {
        ReviewAction::Confirm => {
            store.add_slang(&decision.word)?;
        }
        ReviewAction::Dismiss => {}
    }
    Ok(())
}

pub fn append_audit(dir: impl AsRef<Path>, decision: &ReviewDecision) -> Result<()> {
    let path = dir.as_ref().join(AUDIT_FILE);
    let mut line = serde_json::to_string(decision).expect("decision serializes");
    line.push('\n');
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| Error::io(&path, e))?;
    file.write_all(line.as_bytes())
        .and_then(|_| file.sync_data())
        .map_err(|e| Error::io(&path, e))
}

pub fn read_audit(dir: impl AsRef<Path>) -> Result<Vec<ReviewDecision>> {
    let path = dir.as_ref().join(AUDIT_FILE);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(&path, e)),
    };
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Malformed {
                file: path.clone(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::seed_bundle;
    use chrono::TimeZone;

    #[test]
    fn confirm_promotes() {
        let mut store = seed_bundle();
        store.upsert_suspicious("kalphaa", "alpha", 10).unwrap();
        apply_review(&mut store, &ReviewDecision::now("kalphaa", ReviewAction::Confirm)).unwrap();
        assert!(store.contains_slang("kalphaa"));
        assert!(store.suspicious_record("kalphaa").is_none());
    }

    #[test]
    fn dismiss_keeps_record() {
        let mut store = seed_bundle();
        store.upsert_suspicious("kalphaa", "alpha", 10).unwrap();
        let before = store.clone();
        apply_review(&mut store, &ReviewDecision::now("kalphaa", ReviewAction::Dismiss)).unwrap();
        assert_eq!(store, before);
    }

    #[test]
    fn unknown_word_leaves_store_alone() {
        let mut store = seed_bundle();
        let before = store.clone();
        let err = apply_review(&mut store, &ReviewDecision::now("nosuch", ReviewAction::Confirm));
        assert!(matches!(err, Err(Error::UnknownSuspicious(_))));
        assert_eq!(store, before);
    }

    #[test]
    fn audit_format() {
        let d = ReviewDecision {
            word: "kalphaa".into(),
            action: ReviewAction::Dismiss,
            decided_at: Utc.with_ymd_and_hms(2026, 10, 14, 9, 30, 0).unwrap(),
        };
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"word":"kalphaa","action":"dismiss","decided_at":"2026-10-14T09:30:00Z"}"#
        );
        let dir = tempfile::tempdir().unwrap();
        assert!(read_audit(dir.path()).unwrap().is_empty());
        append_audit(dir.path(), &d).unwrap();
        append_audit(dir.path(), &d).unwrap();
        assert_eq!(read_audit(dir.path()).unwrap(), vec![d.clone(), d]);
    }
}
