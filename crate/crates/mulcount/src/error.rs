//! Error type shared across the crate.

/// Errors produced by the cost-model and emulation APIs.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configuration source (flags, scenario file, tradeoff table) is
    /// unusable: syntax error, unknown token, missing entry.
    #[error("configuration error: {0}")]
    Config(String),

    /// The root-Hermite factor is requested for the perfect-reduction model,
    /// where γ → 1 and δ is not defined.
    #[error("δ undefined for perfect reduction")]
    PerfectDelta,

    /// A value falls outside the representable range of an operation,
    /// e.g. a Fibonacci decomposition input at or above `G_{K+1}`.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A multiplication-oracle operand is not invertible modulo N.
    #[error("operand not invertible modulo N: {0}")]
    NotInvertible(String),

    /// An internal consistency check failed. Callers map this to a distinct
    /// exit status; it indicates a bug, not bad input.
    #[error("internal invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
