use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("vector #{index} does not lie in the piece (charge {charge}, weight {weight})")]
    BidegreeMismatch {
        index: usize,
        charge: i64,
        weight: String,
    },

    #[error("internal truncation bound exceeded: {0}")]
    InternalBound(String),

    #[error(
        "sandwich mismatch at (charge {charge}, weight {weight}): explicit basis rank {explicit}, kernel dimension {kernel}"
    )]
    SandwichMismatch {
        charge: i64,
        weight: String,
        explicit: usize,
        kernel: usize,
    },

    #[error("truncation order mismatch: {0} vs {1}")]
    TruncationMismatch(i64, i64),

    #[error("unknown {kind} `{name}` (known: {known})")]
    Unknown {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
