use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a quadratic field context")]
    NotQuadratic,
    #[error("minimal polynomial is reducible over the rationals: {0}")]
    ReduciblePolynomial(String),
    #[error("invalid field context: {0}")]
    InvalidContext(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("dimension too large: {0} (limit {1})")]
    DimensionTooLarge(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone is not simple")]
    NotSimple,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("{0} is a perfect square")]
    PerfectSquare(u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("cap exceeded: {what} (cap {cap})")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("point is not in the cone")]
    NotInCone,
    #[error("no decomposition over the basis exists (internal consistency failure)")]
    NoDecomposition,
    #[error("balance cap exceeded (cap {0})")]
    BalanceCapExceeded(u64),
    #[error("saturation cap exceeded (cap {0})")]
    SaturationCapExceeded(u64),
    #[error("search bound too large: {0} (limit {1})")]
    BoundTooLarge(u64, u64),
    #[error("family index too large: {0} (limit {1})")]
    IndexTooLarge(u64, u64),
    #[error("eigenvalue vectors are multiplicatively dependent")]
    LogDependence,
    #[error("cone is not certified finitely generated: {0}")]
    NotFg(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
