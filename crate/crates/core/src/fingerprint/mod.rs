//! Quantum fingerprinting over explicit binary linear codes, plus the
//! swap-test comparator used in arbitration.

mod code;
mod state;

pub use code::{LinearCode, MAX_CODE_INPUT_BITS, MAX_EXACT_DISTANCE_BITS};
pub use state::{overlap, repeated_swap_test, swap_test, ComparisonVerdict, FingerprintState};
