use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("positivity violated: {0}")]
    PositivityViolation(String),
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("group too large: {order} elements exceeds bound {bound}")]
    UnsupportedRank { order: usize, bound: usize },
    #[error("unknown Cartan type {0}")]
    UnknownType(String),
    #[error("split failure: {0}")]
    SplitFailure(String),
    #[error("random search exhausted after {0} attempts")]
    RetryExhausted(usize),
    #[error("no rational Perron root: {0}")]
    NoRationalPerronRoot(String),
    #[error("homomorphism violated: {0}")]
    HomomorphismViolation(String),
    #[error("orthogonality violated: {0}")]
    OrthogonalityViolation(String),
    #[error("prime {0} is not invertible in the ground ring")]
    BadPrimeNotInvertible(u64),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("lattice has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("index {index} out of range 1..={rank}")]
    OutOfRange { index: usize, rank: usize },
}

impl Error {
    /// Errors that indicate a broken internal invariant rather than bad input.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(
            self,
            Error::NotDivisible(_) | Error::PositivityViolation(_) | Error::CrossCheckMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
