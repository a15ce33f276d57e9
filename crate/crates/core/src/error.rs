use thiserror::Error;

use crate::arith::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar: {0}")]
    ScalarSyntax(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring mismatch")]
    RingMismatch,

    #[error("grading violation: x{i}*x{j} has a component on x{k} of the wrong parity")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("duplicate table entry ({i}, {j}, {k})")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("zero coefficient in table entry ({i}, {j}, {k})")]
    ZeroCoefficient { i: usize, j: usize, k: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("subspace is not closed under the product")]
    NotASubalgebra,
    #[error("span is not graded: vector {index} has a homogeneous component outside the span")]
    NotGraded { index: usize },
    #[error("algebra is not associative")]
    NotAssociative,
    #[error("characteristic 2 is not supported here")]
    CharTwoUnsupported,
    #[error("subspace is not closed under the supersymmetric product")]
    NotPlusClosed,
    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown corpus entry: {0}")]
    UnknownName(String),
    #[error("bad corpus parameters: {0}")]
    BadParams(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
