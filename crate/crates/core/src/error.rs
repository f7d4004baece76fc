//! Error type shared across the crate.
//!
//! Structural misuse (mismatched truncation orders, out-of-range Bell or
//! Stirling indices) panics; everything data-dependent surfaces here.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Series division by something that is not a unit (zero divisor,
    /// non-constant leading coefficient, or insufficient valuation).
    #[error("divisor is not a unit: {0}")]
    DivisorNotUnit(String),

    /// A series operation required a specific constant term (0 for exp,
    /// 1 for log/pow, 0 for the inner series of a composition).
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),

    /// Compositional inversion needs a nonzero constant first moment.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// Invalid process, family, or simulation parameter.
    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("unknown process: {0}")]
    UnknownProcess(String),

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    /// Requested polynomial degree exceeds the truncation order.
    #[error("degree {degree} exceeds truncation order {order}")]
    DegreeTooLarge { degree: usize, order: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
