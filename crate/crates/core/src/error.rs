use std::fmt;

use thiserror::Error;

use crate::lpdo::{Direction, LinearOperator};

/// Position and offending token of a failed parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {} (found `{}`)",
            self.line, self.column, self.message, self.token
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero argument: {0}")]
    ZeroArgument(&'static str),
    #[error("evaluation point hits a pole")]
    EvaluationSingular,
    #[error("log-derivative pair is not integrable: d_y(lx) != d_x(ly)")]
    NonIntegrablePair,
    #[error("no type-I decomposition with symbol {direction}: remainder {residuals}")]
    NoType1 { direction: Direction, residuals: LinearOperator },
    #[error("operator is not in the normalized class Dx^2*Dy + Dx*Dy^2 + (order <= 2)")]
    NotNormalized,
    #[error("pivot f = 0: transformation does not exist")]
    ZeroPivot,
    #[error("no factorization at stage {stage}: remainder {residuals}")]
    NoFactorization { stage: usize, residuals: LinearOperator },
    #[error("target of the first transformation differs from the source of the second")]
    SourceTargetMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// The requested mathematical object does not exist (as opposed to a
    /// malformed request).
    pub fn is_nonexistence(&self) -> bool {
        matches!(
            self,
            Error::NoType1 { .. } | Error::ZeroPivot | Error::NoFactorization { .. }
        )
    }
}
