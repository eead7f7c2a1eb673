use thiserror::Error;

/// Everything that can go wrong in the exact routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix data of length {len} is not square")]
    NotSquare { len: usize },

    #[error("negative power of a singular matrix")]
    NegativePowerOfSingular,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("vector is not primitive (gcd of coordinates is {gcd})")]
    NotPrimitive { gcd: String },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("enumeration budget exceeded: {needed} nodes required, budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("expected {expected} inputs, found {found}")]
    ParityMismatch { expected: &'static str, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
