use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty lexeme")]
    EmptyLexeme,

    #[error("lexeme {0:?} contains whitespace")]
    InvalidLexeme(String),

    #[error("{0:?} has no alphabetic characters to key")]
    NotAlphabetic(String),

    #[error("duplicate slang lexeme {0:?}")]
    DuplicateLexeme(String),

    #[error("duplicate sounds-alike variant {0:?}")]
    DuplicateVariant(String),

    #[error("duplicate suspicious word {0:?}")]
    DuplicateSuspicious(String),

    #[error("duplicate id {id} in {table} table")]
    DuplicateId { table: &'static str, id: u64 },

    #[error("sounds-alike variant {variant:?} refers to unknown slang lexeme {canonical:?}")]
    DanglingCanonical { variant: String, canonical: String },

    #[error("suspicious word {word:?} refers to unknown slang lexeme {matched:?}")]
    DanglingMatchedSlang { word: String, matched: String },

    #[error("{0:?} is already in the slang lexicon")]
    AlreadySlang(String),

    #[error("no suspicious record for {0:?}")]
    UnknownSuspicious(String),

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("{}:{line}: {message}", file.display())]
    Malformed {
        file: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{} is not empty", .0.display())]
    NotEmpty(PathBuf),

    #[error("stop-word file {} is missing", .0.display())]
    MissingStopwords(PathBuf),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            detail: detail.into(),
        }
    }
}
