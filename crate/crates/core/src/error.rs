use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("odd index {index} out of range for {len} odd variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected a homogeneous value: {0}")]
    NonHomogeneous(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square: {0}")]
    NotSquare(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("neither diagonal block is invertible")]
    NeitherBlockInvertible,
    #[error("entry has a non-constant body: {0}")]
    NonConstantBody(String),
    #[error("point is not on the variety: generator {generator} takes value {value}")]
    PointNotOnVariety { generator: String, value: String },
    #[error("malformed action: {0}")]
    MalformedAction(String),
    #[error("reserved generator `{0}` used by an operand")]
    ReservedGeneratorCollision(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
