use thiserror::Error;

use crate::dim::Dim;

/// Failures of the algebraic core. Law violations found by the checkers are
/// reported as data (see [`crate::report`]); these are the hard errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: cannot add an element of dimension {left} to one of dimension {right}")]
    DimensionMismatch { left: Dim, right: Dim },
    #[error("dimension map mismatch: pointwise addition needs equal dimension maps ({0})")]
    DimensionMapMismatch(String),
    #[error("{dim} is not an element of {monoid}")]
    NotInMonoid { dim: Dim, monoid: String },
    #[error("unknown dimension {0}")]
    UnknownDimension(Dim),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the dimension monoid {0} is not a group")]
    NotAGroup(String),
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
