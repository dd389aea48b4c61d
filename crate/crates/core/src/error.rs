use thiserror::Error;

/// Errors raised by field, domain, code and group computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field {p}^{degree} exceeds the supported size 2^20")]
    FieldTooLarge { p: u32, degree: u32 },
    #[error("polynomial {0:?} is not irreducible over the prime field")]
    NotIrreducible(Vec<u32>),
    #[error("{0} is not the size of a subfield of the ambient field")]
    NotASubfieldSize(u64),
    #[error("exponent {exponent} outside 0..={max}")]
    ExponentOutOfRange { exponent: i64, max: i64 },
    #[error("subfield size {size} does not divide into {next} (sizes must form a subfield chain)")]
    NotNested { size: u64, next: u64 },
    #[error("block specification is empty or has a zero multiplicity")]
    EmptyBlock,
    #[error("coordinate index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("degree {u} outside the admissible range {min}..={max}")]
    DegreeOutOfRange { u: i64, min: i64, max: i64 },
    #[error("omega has {got} elements, expected {expected}")]
    BadOmegaSize { expected: usize, got: usize },
    #[error("omega element is not in the coordinate subfield of size {0}")]
    OmegaNotInSubfield(u64),
    #[error("coordinate k = {k} is not admissible for this degree")]
    KOutOfRange { k: usize },
    #[error("invalid affine transform: {0}")]
    InvalidTransform(String),
    #[error("{what} needs {needed} steps, above the cap {cap}")]
    TooLarge {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("subset size {s} outside 0..={max}")]
    SizeOutOfRange { s: usize, max: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
