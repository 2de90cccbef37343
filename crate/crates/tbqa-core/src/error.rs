//! Error types shared across the crate.

use thiserror::Error;

/// Category of a document parse failure, reported alongside the line number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Wrong column count or a column that does not parse.
    MalformedLine,
    /// Token ids are not the contiguous sequence 1..n.
    BadTokenId,
    /// Base afun not present in the inventory.
    UnknownAfun,
    /// Affix suffix that is not one of E, P, Co, Ap, or appears twice.
    BadAffix,
    /// HEAD outside 0..=sentence_length.
    HeadOutOfRange,
    /// Token is its own head.
    SelfLoop,
    /// Heads form a cycle or leave tokens unreachable from the root.
    InvalidTree,
    /// The same sent_id appears twice in one document.
    DuplicateSentId,
    /// A sentence header with no token lines.
    EmptySentence,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ParseErrorKind::MalformedLine => "malformed line",
            ParseErrorKind::BadTokenId => "bad token id",
            ParseErrorKind::UnknownAfun => "unknown afun",
            ParseErrorKind::BadAffix => "bad affix",
            ParseErrorKind::HeadOutOfRange => "head out of range",
            ParseErrorKind::SelfLoop => "self-loop",
            ParseErrorKind::InvalidTree => "invalid tree",
            ParseErrorKind::DuplicateSentId => "duplicate sent_id",
            ParseErrorKind::EmptySentence => "empty sentence",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}: {message}")]
    Parse {
        line: usize,
        kind: ParseErrorKind,
        message: String,
    },

    #[error("invalid inventory: {0}")]
    Inventory(String),

    #[error("rule config line {line}: {message}")]
    RuleConfig { line: usize, message: String },

    #[error("unknown rule id `{0}`")]
    UnknownRule(String),

    #[error("documents are not parallel: {0}")]
    NonParallel(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("infeasible design: {0}")]
    Design(String),

    #[error("invalid ledger: {0}")]
    Ledger(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
