use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty polynomial: all terms cancel")]
    EmptyPolynomial,
    #[error("variable x{index} exceeds dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("total degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("quadrature hit -inf at {skipped} of {total} nodes")]
    QuadratureSingular { skipped: usize, total: usize },
    #[error("value is -inf at every torus node")]
    DegenerateBasePoint,
    #[error("axis index {index} out of range 1..={dim}")]
    AxisOutOfRange { index: usize, dim: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
