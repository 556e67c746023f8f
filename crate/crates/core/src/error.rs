//! Error type shared by every fallible operation in the crate.
//!
//! Three failure classes cover everything the library can reject:
//!
//! * [`Error::Domain`] — the arguments are outside the mathematical domain of
//!   the operation (e.g. `d > n`, `x = 0`, or a rational with denominator 0).
//! * [`Error::BoundExceeded`] — the arguments are valid but the operation
//!   would enumerate more objects than its configured cap allows.  The error
//!   carries the cap name, the required count, and the cap so callers can
//!   report exactly which bound fired and by how much.
//! * [`Error::Internal`] — an invariant the library itself guarantees was
//!   violated (an inexact division, a cancellation that did not happen).
//!   Seeing one of these is a bug in this crate, never a caller mistake.

use num_bigint::BigInt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed its configured cap.
    #[error("enumeration bound exceeded: {name} requires {required} objects but the cap is {cap}")]
    BoundExceeded {
        /// Name of the bound that fired (e.g. `"record-tuples"`).
        name: &'static str,
        /// Number of objects the requested computation would enumerate.
        required: BigInt,
        /// Configured maximum.
        cap: u64,
    },

    /// A library invariant failed; this is a bug in the crate.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Shorthand for a [`Error::Domain`] with a formatted message.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Shorthand for a [`Error::Internal`] with a formatted message.
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
