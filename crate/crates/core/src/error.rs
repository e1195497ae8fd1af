//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Variants split into two families: input errors (malformed text, wrong
/// shapes) and mathematical precondition failures (a point that is not a
/// zero, a degenerate form). [`Error::is_input_error`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("integer too large to factor within the configured limit: {0}")]
    FactorizationLimit(String),
    #[error("division is not exact")]
    NonExactDivision,
    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("point is not a zero of the system: {0}")]
    NotAZero(String),
    #[error("zero is not isolated: {0}")]
    NotIsolated(String),
    #[error("distinguished socle element vanishes in the local algebra")]
    SocleZero,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("modulus is not separable")]
    InseparableModulus,
    #[error("Jacobian vanishes at the point: map is not etale there")]
    NotEtale,
    #[error("Bezoutian matrix is singular: input is not a complete intersection")]
    SingularTheta,
    #[error("Hessian determinant vanishes: point is not a node")]
    NotANode,
    #[error("lines are not in general position: {0}")]
    DegeneratePosition(String),
    #[error("solution outside the affine chart: {0}")]
    ChartMiss(String),
    #[error("lines do not intersect: {0}")]
    NoIntersection(String),
    #[error("solution line is not defined over the base field")]
    IrrationalSolution,
    #[error("value is not a unit: {0}")]
    NotAUnit(String),
    #[error("computation cancelled")]
    Cancelled,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for malformed input (bad syntax, unknown names, wrong shapes),
    /// false for failures of a mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::InvalidInput(_)
                | Error::InvalidField(_)
                | Error::FieldMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
