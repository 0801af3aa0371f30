use thiserror::Error;

/// Unified error type for the exact layer and the numeric layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A ring parameter is outside the supported family (k < 2, k not squarefree).
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),

    /// Text input violates the element/polynomial grammar. Offsets are 0-based bytes.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// An operation precondition does not hold (zero divisor, non-monic input, degree range...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration would exceed its configured candidate budget, or a degree cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The floating-point layer failed to reach its accuracy contract.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Not enough usable data points for a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
