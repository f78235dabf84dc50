//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by state operations, codes, key handling and protocol runs.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A protocol operation was invoked outside its allowed phase.
    #[error("protocol order violation: {0}")]
    ProtocolOrder(String),

    /// An internal consistency check failed (e.g. a state drifted off norm).
    #[error("internal consistency: {0}")]
    Inconsistency(String),

    /// Not enough key material left for the requested operation.
    #[error("key exhausted: needed {needed} bits, {available} available")]
    KeyExhausted { needed: usize, available: usize },

    /// A one-time key segment was used more than once.
    #[error("one-time violation: {0}")]
    OneTimeViolation(String),

    /// The request exceeds what this implementation supports.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// A consumable resource (fingerprint copies, suppliers) ran out.
    #[error("resource exhausted: {0}")]
    Resource(String),

    /// A randomized construction failed to satisfy its postcondition.
    #[error("construction failed: {0}")]
    Construction(String),

    /// A scenario could not complete for reasons outside the protocol itself.
    #[error("scenario error: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
