use thiserror::Error;

/// Errors raised by the arithmetic routines.
///
/// Everything except [`Error::Internal`] is a violated mathematical
/// precondition; `Internal` means an invariant that should hold by theory did
/// not, which is a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not allowed here")]
    Zero,
    #[error("inconsistent system of congruences")]
    InconsistentSystem,
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("{0} does not define a quadratic field")]
    NotQuadratic(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("square discriminant {0}")]
    SquareDiscriminant(i64),
    #[error("forms have different discriminants ({0} vs {1})")]
    MismatchedDiscriminants(i64, i64),
    #[error("form ({0}, {1}, {2}) is not primitive")]
    NotPrimitive(i64, i64, i64),
    #[error("no degree-one ideal above the inert prime {0}")]
    NoDegreeOneIdeal(i64),
    #[error("prime {0} does not split")]
    NotSplit(i64),
    #[error("{0} is not ramified")]
    NotRamified(i64),
    #[error("continued fraction period exceeds {0} steps")]
    PeriodTooLong(usize),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("filtration length must be at least 2 (got {0})")]
    LengthTooSmall(u32),
    #[error("character is the Teichmüller character; the component is trivial")]
    OmegaExcluded,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
