use thiserror::Error;

/// Errors raised by group constructions and the algorithms built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource limit exceeded: {what} requires order {required}, budget is {budget}")]
    ResourceLimit {
        what: String,
        required: u128,
        budget: usize,
    },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("numerical quality failure: {0}")]
    NumericalQuality(String),

    #[error("simultaneous diagonalization failed after {attempts} attempts: {detail}")]
    Diagonalization { attempts: usize, detail: String },

    #[error("malformed cache document: {0}")]
    CacheFormat(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
