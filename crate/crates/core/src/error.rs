//! Error types shared across the library.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum HlError {
    /// Evaluation requested exactly at a pole of a meromorphic quantity
    /// where no finite part is defined for the requested operation.
    #[error("evaluation at a pole: {0}")]
    Pole(String),

    /// Input outside the mathematical domain of the routine.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation could not reach the requested accuracy
    /// (continuation depth exhausted, derivative order exceeded, ...).
    #[error("precision exhausted: {0}")]
    Precision(String),

    /// Series truncation bound could not be met within the term cap.
    #[error("series truncation failed: {0}")]
    Truncation(String),

    /// Sample grid too coarse or degenerate for the requested fit.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Linear system in a fit was too ill-conditioned to trust.
    #[error("ill-conditioned fit: condition estimate {0:.3e}")]
    IllConditioned(f64),

    /// Richardson levels stopped contracting: the residual after peeling
    /// the requested ladder is dominated by noise, not by the next term.
    #[error("noise floor reached: {0}")]
    NoiseFloor(String),

    /// Interpolation / fitting nodes coincide or nearly coincide.
    #[error("degenerate sample nodes: {0}")]
    DegenerateNodes(String),

    /// Exact bookkeeping of transcendental symbols failed to cancel:
    /// two terms with different symbol tags were asked to combine.
    #[error("symbol mismatch in exact arithmetic: {0}")]
    SymbolMismatch(String),

    /// A Mellin-transform value that must be nonzero came out zero
    /// (profile chosen badly for the requested argument).
    #[error("vanishing integral transform: {0}")]
    MellinZero(String),

    /// A cutoff-profile normalization came out zero.
    #[error("vanishing cutoff normalization: {0}")]
    CutoffZero(String),
}

pub type Result<T> = std::result::Result<T, HlError>;
