//! Key establishment and one-time-pad encryption: a simplified BB84
//! exchange produces the shared key protecting the classical message copy.

mod bb84;
mod otp;

pub use bb84::{bb84_exchange, Bb84Report, MIN_RAW_COUNT};
pub use otp::{otp_decrypt, otp_encrypt, Ciphertext, Key};
