use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("denominator of {value} is divisible by the field modulus {modulus}")]
    DenominatorDivisibleByP { value: String, modulus: u64 },

    #[error("{modulus} is not a usable modulus: {reason}")]
    InvalidModulus { modulus: u64, reason: &'static str },

    #[error("size guard exceeded: {entries} matrix entries requested, limit is {limit}")]
    SizeGuardExceeded { entries: u128, limit: u64 },

    #[error("size guard exceeded at blow-up order {}: {entries} entries requested, limit is {limit}", tested_up_to + 1)]
    BlowupSizeGuard { tested_up_to: usize, entries: u128, limit: u64 },

    #[error("transform is singular")]
    SingularTransform,

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not an element of the space")]
    NotInSpace,

    #[error("subspace lives in dimension {actual}, space acts on dimension {expected}")]
    AmbientMismatch { expected: usize, actual: usize },

    #[error("parameters p={p}, q={q} do not give a maximal-compression space of size {m}x{n}")]
    NotMaximalCompression { p: usize, q: usize, m: usize, n: usize },

    #[error("invalid compression parameters: {0}")]
    InvalidParams(String),

    #[error("asymptotic formula needs p >= 1 and q >= 1 (got p={p}, q={q})")]
    ZeroPQ { p: usize, q: usize },

    #[error("argument out of domain: {0}")]
    DomainError(String),

    #[error("inconsistent evidence: {0}")]
    InconsistentEvidence(String),

    #[error("space is {rows}x{cols}, a square space is required")]
    NonSquare { rows: usize, cols: usize },

    #[error("construction needs odd d, got {0}")]
    EvenD(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
