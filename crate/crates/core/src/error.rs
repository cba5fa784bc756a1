use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("scalars belong to different fields: {0}")]
    FieldMismatch(String),
    #[error("matrix is not {exponent}-potent")]
    NotPotent { exponent: u32 },
    #[error("matrix does not have order dividing {order}")]
    NotOfOrder { order: u32 },
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("trace is not in the integer span of the roots of unity: {0}")]
    NonIntegral(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("prescribed diagonal is unreachable: {0}")]
    Unreachable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("column support witness violated at column {col}: nonzero entry in row {row}")]
    SupportViolation { row: usize, col: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
