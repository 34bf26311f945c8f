use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("resultant of two zero polynomials")]
    BothZero,
    #[error("constant polynomial has no discriminant")]
    ConstantPolynomial,
    #[error("{0} is not monic; apply normalize_integral first")]
    NotMonic(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("stage {stage} is reducible: factor {factor}")]
    ReducibleStage { stage: usize, factor: String },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("'{token}': {message}")]
    Semantic { token: String, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no admissible λ among the first {attempts} attempts for ({left}, {right})")]
    NoAdmissibleLambda { attempts: usize, left: String, right: String },
    #[error("candidate space has {cardinality} elements, above the cap {cap}")]
    SpaceTooLarge { cardinality: String, cap: u64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
