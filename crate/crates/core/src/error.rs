use thiserror::Error;

#[derive(Debug, Error)]
pub enum NrdError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("arity {0} is outside the supported range")]
    UnsupportedArity(usize),

    #[error("predicate must be nontrivial (neither empty nor full)")]
    TrivialPredicate,

    #[error("invalid symmetry element: {0}")]
    InvalidSymmetry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("literal x{index} is out of range for k = {k}")]
    LiteralOutOfRange { index: usize, k: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degree {degree} is invalid for arity {arity}")]
    InvalidDegree { degree: usize, arity: usize },

    #[error("lattice test fails at degree {0}")]
    DegreeInsufficient(usize),

    #[error("certificate search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    #[error("operation requires a lattice of rank at least one")]
    ZeroRank,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("witness set does not match instance: {0}")]
    WitnessMismatch(String),

    #[error("conditional pair requires P strictly contained in Q")]
    ContainmentViolation,

    #[error("conditional non-redundancy requires an r-partite instance")]
    NotPartite,

    #[error("exhaustive search refused: {0}")]
    FeasibilityRefused(String),

    #[error("construction failed verification: {0}")]
    UnverifiedConstruction(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal verification failed for predicate {index}: {reason}")]
    Verification { index: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, NrdError>;
