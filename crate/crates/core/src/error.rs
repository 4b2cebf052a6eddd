use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at s = {0}")]
    Pole(f64),
    #[error("matrix is singular")]
    Singular,
    #[error("degree guard exceeded: total degree {degree} > {limit}")]
    DegreeGuard { degree: u32, limit: u32 },
    #[error("rule derivation failed: {0}")]
    RuleDerivation(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("expected an element of exterior degree {expected}, found {found}")]
    Degree { expected: usize, found: String },
    #[error("constant tensor check failed: {0}")]
    Consistency(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
