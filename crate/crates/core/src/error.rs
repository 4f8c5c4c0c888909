use thiserror::Error;

use crate::oracle::ExhaustionCertificate;

/// Errors raised anywhere in the library.
///
/// The `Display` output of each variant starts with a stable upper-case tag
/// (`NON_PRIME`, `CAP_EXCEEDED`, ...) which the CLI prints verbatim.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("NON_PRIME: {0} is not a prime")]
    NonPrime(u64),
    #[error("CAP_EXCEEDED: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u64 },
    #[error("INVALID_ARGUMENT: {0}")]
    InvalidArgument(String),
    #[error("NOT_IRREDUCIBLE: modulus {0:?} is not a monic irreducible polynomial")]
    NotIrreducible(Vec<u32>),
    #[error("DIVISION_BY_ZERO")]
    DivisionByZero,
    #[error("NOT_A_SQUARE_FIELD: GF({p}^{m}) has odd extension degree")]
    NotASquareField { p: u32, m: u32 },
    #[error("NOT_A_DIVISOR: {k} does not divide {order}")]
    NotADivisor { k: u64, order: u64 },
    #[error("DIMENSION_MISMATCH: {0}")]
    DimensionMismatch(String),
    #[error("NOT_SQUARE: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("RANK_DEFICIENT: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("DUPLICATE_POINTS: evaluation point {0} repeated")]
    DuplicatePoints(u32),
    #[error("ZERO_MULTIPLIER: column multiplier {0} is zero")]
    ZeroMultiplier(usize),
    #[error("ZERO_SCALAR")]
    ZeroScalar,
    #[error("NO_SCALAR_FOUND: no nonzero scalar makes the scaled code LCD")]
    NoScalarFound,
    #[error("NOT_SYSTEMATIC: generator is not of the form [I_k : P]")]
    NotSystematic,
    #[error("NOT_SELF_ORTHOGONAL: Gram matrix is nonzero")]
    NotSelfOrthogonal,
    #[error("BAD_SCALAR: {0}")]
    BadScalar(String),
    #[error("UNSUPPORTED_PARAMS: {0}")]
    UnsupportedParams(String),
    #[error("VALIDATION_FAILED: {0}")]
    ValidationFailed(String),
    #[error("NOT_COVERED: {0}")]
    NotCovered(String),
    #[error("NONEXISTENT: {0}")]
    Nonexistent(Box<ExhaustionCertificate>),
    #[error("NOT_FOUND: {reason}")]
    NotFound {
        reason: String,
        exhaustion: Option<Box<ExhaustionCertificate>>,
    },
    #[error("PARSE_ERROR: line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn cap(what: &'static str, needed: u128, cap: u64) -> Self {
        Error::CapExceeded { what, needed, cap }
    }

    /// True for the three "construction unavailable" outcomes.
    pub fn is_unavailable(&self) -> bool {
        matches!(
            self,
            Error::NotCovered(_) | Error::Nonexistent(_) | Error::NotFound { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
