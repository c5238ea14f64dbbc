use thiserror::Error;

use crate::scalar::Symbol;
use crate::syntax::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative exponent {0} is not allowed")]
    NegativeExponent(i64),

    #[error("unbound symbols: {}", join_symbols(.0))]
    UnboundSymbols(Vec<Symbol>),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),

    #[error("transform symbols must be distinct, {0} is repeated")]
    DuplicateSymbol(Symbol),

    #[error("state norm is not rational, cannot normalize exactly")]
    IrrationalNorm,

    #[error("the zero state cannot be normalized")]
    ZeroState,

    #[error("invalid amplitude {0:?}")]
    InvalidAmplitude(String),

    #[error("invalid normal form JSON: {0}")]
    InvalidJson(String),

    #[error("expansion degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn join_symbols(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(Symbol::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}
