use thiserror::Error;

use crate::classify::EpsilonClass;

/// Errors raised by the numeric layer (`multivector`, `classify`, `transcend`).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient {0} is not a finite number")]
    InvalidValue(f64),

    #[error("element is not invertible (I is zero within tolerance)")]
    NonInvertible,

    #[error("the zero element has no polar form")]
    ZeroElement,

    #[error("result exceeds the range of double precision")]
    Overflow,

    #[error("root index must be at least 2, got {0}")]
    BadExponent(i64),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("epsilon must lie in {expected}, but it classifies as {found}")]
    EpsilonMismatch {
        expected: EpsilonClass,
        found: EpsilonClass,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
