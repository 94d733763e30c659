use thiserror::Error;

/// Errors raised by the algebra kernels and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in the prime field")]
    DivisionByZero,
    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),
    #[error("linear change of coordinates is singular")]
    SingularMatrix,
    #[error("linear form has zero coefficient on the pivot variable")]
    BadPivot,
    #[error("m_index is undefined for the unit monomial")]
    UnitMonomial,
    #[error("colon by the zero polynomial")]
    ZeroDivisorPolynomial,
    #[error("operation undefined for the unit ideal")]
    UnitIdeal,
    #[error("operation requires a proper nonzero ideal")]
    DegenerateIdeal,
    #[error("generic initial ideal: no two of {trials} trials agreed")]
    NoAgreement { trials: usize },
    #[error("monomial ideal is not stable")]
    NotStable,
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("every sampled linear form gave an infinite colon length")]
    AllSamplesInfinite,
    #[error("ring needs between 1 and {max} variables, got {got}")]
    VariableCount { got: usize, max: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("line {line}: generator {index} is not homogeneous")]
    NonHomogeneousGenerator { index: usize, line: usize },
    #[error("line {line}, column {column}: unknown variable `{name}`")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(
        "generator degree {degree} exceeds p/100 for p = {p}; \
         generic initial ideals are unreliable in this characteristic"
    )]
    CharacteristicTooSmall { degree: u32, p: u32 },
    #[error("generator degree {degree} exceeds the --max-degree cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
