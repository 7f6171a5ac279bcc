use thiserror::Error;

use crate::congruence::TranslationViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("negative arity for symbol `{symbol}` at byte {pos}")]
    NegativeArity { symbol: String, pos: usize },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("arity mismatch for `{symbol}`: expected {expected}, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("variable v{0} is not bound by the assignment")]
    UnboundVariable(u32),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("element {value} is outside the carrier of size {size}")]
    OutOfCarrier { value: usize, size: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{what} exceeds the configured cap of {limit}")]
    SizeCapExceeded { what: &'static str, limit: usize },

    #[error("not a congruence: {0}")]
    NotACongruence(Box<TranslationViolation>),

    #[error("not a group: identity {0} fails")]
    NotAGroup(String),

    #[error("map is not a homomorphism: fails at {symbol}{args:?}")]
    NotAHomomorphism { symbol: String, args: Vec<usize> },

    #[error("factorizations do not share the same base map")]
    MismatchedBase,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),
}
