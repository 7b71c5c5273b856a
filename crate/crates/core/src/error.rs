use thiserror::Error;

use crate::matroid::ElementId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("element does not belong to the field")]
    ForeignElement,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid tower polynomial: {0}")]
    BadModulus(&'static str),
    #[error("field is not a tower prefix of the target field")]
    NotSubfield,
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("set is independent and contains no circuit")]
    NoCircuit,
    #[error("not a basis: {0}")]
    NotABasis(&'static str),
    #[error("deleted and contracted sets overlap")]
    OverlappingMinor,
    #[error("element index {index} outside ground set of size {len}")]
    UnknownElement { index: usize, len: usize },
    #[error("element id {0} is already in use")]
    IdCollision(ElementId),
    #[error("ground set of {0} elements exceeds the 64-element set capacity")]
    GroundSetTooLarge(usize),
    #[error("ordering is not a permutation of the ground set")]
    NotAPermutation,
    #[error("{n} elements exceed the exact-search guard of {limit}")]
    GuardExceeded { n: usize, limit: usize },
    #[error("prefix has connectivity {lambda}, above the target width {t}")]
    PrefixTooWide { lambda: usize, t: usize },
    #[error(
        "no candidate extends the prefix in iteration {iteration}; the oracle answers are inconsistent with width {t}"
    )]
    NoExtension { iteration: usize, t: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),
    #[error("invalid generator parameters: {0}")]
    Generator(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
