//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by dataset handling, policy evaluation, threshold
/// estimation, and training.
#[derive(Debug, Error)]
pub enum Error {
    /// A character outside the policy vocabulary was encountered.
    #[error("character {ch:?} at byte position {pos} is not in the vocabulary")]
    OutOfVocab { ch: char, pos: usize },

    /// A computation received or produced a non-finite number.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// A dataset or batch that must be non-empty was empty.
    #[error("{what} must be non-empty")]
    Empty { what: &'static str },

    /// A parameter violated its documented range or relationship.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Toy generation could not produce a tie-free prompt within the
    /// resample budget.
    #[error(
        "failed to sample a prompt with a unique shortest and longest word \
         after {attempts} attempts; vocabulary lengths are too uniform"
    )]
    PromptTies { attempts: usize },

    /// A JSONL record failed to parse.
    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },

    /// A configuration file field failed to parse or was unknown.
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    /// A checkpoint file was unreadable, corrupt, or of the wrong version.
    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
