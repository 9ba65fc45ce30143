use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid layer profile: {0}")]
    InvalidProfile(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// Exhaustive enumeration was asked for more than the configured bound.
    #[error("n = {n} exceeds the enumeration bound {bound}; {estimate}")]
    BoundExceeded {
        n: usize,
        bound: usize,
        estimate: String,
    },

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("malformed data: {0}")]
    Data(String),

    /// A constructed object failed its own post-condition check.
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
