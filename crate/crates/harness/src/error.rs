use thiserror::Error;
use tourpath_core::{EmbedError, PatternError, TournamentError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("verification failed: {reason}\nreproduce: tourpath embed {code} {pattern}")]
    Verification { reason: String, code: String, pattern: String },
    #[error("record line {line}: {msg}")]
    Corrupt { line: usize, msg: String },
}
