use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation needs 2 to be invertible (characteristic 2 field)")]
    CharacteristicTwo,
    #[error("characteristic {characteristic} is too small for degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("Leibniz identity fails on basis triple ({x}, {y}, {z})")]
    LeibnizFailure { x: String, y: String, z: String },
    #[error("bracket is not well defined on the quotient: {0}")]
    IllDefined(String),
    #[error("parse error{} at position {position}: {message}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        position: usize,
        message: String,
    },
    #[error("variable '{0}' has no assigned value")]
    UnassignedVariable(String),
    #[error("budget exceeded for {what}: needs {needed}, budget {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },
    #[error("method not applicable: {0}")]
    MethodInapplicable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("format error: {0}")]
    Format(String),
}
