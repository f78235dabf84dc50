//! Simulation library for a quantum digital signature protocol over GHZ
//! triplets.
//!
//! Alice signs an N-bit message by applying local bit-flips to the third
//! particle of N entangled triplets; Bob recovers and checks the message
//! with a CNOT plus a Bell-basis measurement per triplet; disputed
//! signatures go to an arbitrator who compares quantum fingerprints of the
//! message with repeated swap tests. A simplified BB84 exchange supplies
//! the one-time-pad key protecting the classical copy of the message.
//!
//! The crate is organized as:
//!
//! - [`quantum`] — dense state vectors, gates, seeded measurement;
//! - [`fingerprint`] — binary linear codes, fingerprint states, swap tests;
//! - [`qkd`] — BB84 simulation and one-time-pad encryption;
//! - [`protocol`] — the session state machine (sign, authenticate, arbitrate);
//! - [`harness`] — party orchestration, attack scenarios, channel accounting.
//!
//! Amplitude arithmetic is generic over the scalar type (`f32` or `f64`,
//! see [`Scalar`]); the protocol layers run on the `f64` aliases below.

pub mod bits;
pub mod error;
pub mod fingerprint;
pub mod harness;
pub mod protocol;
pub mod qkd;
pub mod quantum;
pub mod rng;
pub mod scalar;
pub mod transcript;

pub use bits::BitString;
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision state vector, the default for protocol runs.
pub type StateVector64 = quantum::StateVector<f64>;
/// Single-precision state vector for shallow, memory-tight experiments.
pub type StateVector32 = quantum::StateVector<f32>;
/// Double-precision fingerprint state.
pub type Fingerprint64 = fingerprint::FingerprintState<f64>;
