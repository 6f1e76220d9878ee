use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: estimated size {estimated} exceeds the guard of {limit}")]
    GuardExceeded {
        what: String,
        estimated: u128,
        limit: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown parameter `{0}` (not in the declared parameter universe)")]
    UnknownParameter(String),

    #[error("parameter `{0}` has no assigned value")]
    UnassignedParameter(String),

    #[error("parameter `{0}` may not be assigned zero")]
    ZeroParameter(String),

    #[error("series constant term must be 1 to be inverted this way")]
    ConstantTermNotOne,

    #[error("word is not {expected}: {word}")]
    WrongSequenceKind {
        expected: &'static str,
        word: String,
    },

    #[error("index {index} is outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("operation not supported for {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn guard(what: impl Into<String>, estimated: u128, limit: u128) -> Self {
        Error::GuardExceeded {
            what: what.into(),
            estimated,
            limit,
        }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
