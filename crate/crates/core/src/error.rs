//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by library operations.
///
/// The CLI maps `ComputationCap` to exit code 2 and everything else to
/// exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad parameters, dimension mismatches, complexes
    /// that fail a precondition (e.g. not knot-like).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computation could not be completed exactly (e.g. non-exact
    /// polynomial division, asymmetric Euler characteristic).
    #[error("computation failed: {0}")]
    Computation(String),

    /// An exactness cap was exceeded (representative enumeration,
    /// stabilization window). Retry with a larger cap or sampled mode.
    #[error("computation cap exceeded: {0}")]
    ComputationCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
