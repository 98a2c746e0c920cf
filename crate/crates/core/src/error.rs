use alloc::string::String;

/// Errors raised by the exact core and the numeric evaluator.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A rational function was evaluated at a root of its denominator.
    #[error("denominator vanishes at t = {0}")]
    PoleAtT(String),

    /// A coefficient beyond the known truncation order was required.
    #[error("insufficient truncation: need degree {needed}, series known through {known}")]
    InsufficientTruncation { needed: i64, known: i64 },

    /// Index addition in the quasi-shuffle produced the forbidden letter y0.
    #[error("quasi-shuffle would produce the letter y0 (from y{0} and y{1})")]
    ZeroIndexLetter(i32, i32),

    /// A letter with index zero was requested.
    #[error("letter index must be nonzero")]
    ZeroLetter,

    #[error("operation undefined on the empty word")]
    EmptyWord,

    /// The leading index of a q-series argument is zero, so the series diverges.
    #[error("leading index k1 must be nonzero")]
    ZeroLeadingIndex,

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    /// Characters are only defined on words with strictly negative indices.
    #[error("character undefined on word {0}: all letters must have negative index")]
    UnsupportedWord(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
