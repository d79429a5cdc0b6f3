use thiserror::Error;

use crate::algebra::BasisIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grading violation: [{left}, {right}] has a component on {offending}")]
    GradingViolation {
        left: BasisIndex,
        right: BasisIndex,
        offending: BasisIndex,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("duplicate bracket entry [{0}, {1}]")]
    DuplicateEntry(BasisIndex, BasisIndex),
    #[error("field mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: String, found: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("expected an even coordinate vector of length {expected}, found length {found}")]
    NotEven { expected: usize, found: usize },
    #[error("graded map is singular")]
    SingularMap,
    #[error("no even element outside [L0, L0]")]
    EmptySearchSpace,
    #[error("parts {parts:?} do not sum to m = {m} or contain a zero part")]
    PartitionMismatch { parts: Vec<usize>, m: usize },
    #[error("odd dimension m = {0} must be odd and at least 3")]
    EvenM(usize),
    #[error("degenerate family: the last parameter must be nonzero")]
    DegenerateFamily,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("parameters violate the Leibniz superidentity at ({0}, {1}, {2})")]
    Inconsistency(BasisIndex, BasisIndex, BasisIndex),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("L/L^2 has dimension {0}, expected 2")]
    NotTwoGenerated(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            line: 0,
            column: 0,
            message: message.into(),
        }
    }
}
