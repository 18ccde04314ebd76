use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("unknown frame label `{0}`")]
    UnknownLabel(String),
    #[error("tensor is not rho-compatible: {0}")]
    NotRhoCompatible(String),
    #[error("invalid algebroid: {0}")]
    InvalidAlgebroid(String),
    #[error("sigma is not a right inverse of the anchor")]
    NotRightInverse,
    #[error("theta is not in the image of D_rho*: {0}")]
    InconsistentTheta(String),
    #[error("object is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("form is not a source pullback: {0}")]
    NotInImage(String),
    #[error("section is not vertical: {0}")]
    NotVertical(String),
    #[error("invalid bialgebra: {0}")]
    InvalidBialgebra(String),
    #[error("validation failure: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, CalcError>;
