//! One-time-pad encryption over shared key bits.
//!
//! Each party holds its own copy of the exchanged key and burns through it
//! front to back. A [`Key`] tracks how much of its material has been
//! claimed; segments are claimed exactly once, and a ciphertext remembers
//! which segment produced it so the decrypting copy can verify it is
//! consuming the matching bits.

use crate::bits::BitString;
use crate::error::{Error, Result};

/// One party's copy of a shared secret key.
///
/// Deliberately not serializable: key bits never leave the process through
/// reports. Cloning models the two ends of the exchange holding identical
/// material.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Key {
    bits: BitString,
    claimed: usize,
}

/// An encrypted message plus the key offset that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    bits: BitString,
    key_offset: usize,
}

impl Key {
    pub fn from_bits(bits: BitString) -> Self {
        Key { bits, claimed: 0 }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Unclaimed bits remaining.
    pub fn remaining(&self) -> usize {
        self.bits.len() - self.claimed
    }

    /// Reads key bits without claiming them.
    ///
    /// A party knows its own key material, so reading is always possible;
    /// claim tracking only disciplines the honest encrypt/decrypt path.
    /// Attack scenarios use this to model a cheating insider.
    pub fn peek(&self, offset: usize, len: usize) -> Result<BitString> {
        if offset + len > self.bits.len() {
            return Err(Error::KeyExhausted {
                needed: len,
                available: self.bits.len().saturating_sub(offset),
            });
        }
        BitString::from_bits((offset..offset + len).map(|i| self.bits.get(i).unwrap()).collect())
    }

    fn claim(&mut self, len: usize) -> Result<(usize, BitString)> {
        if self.claimed + len > self.bits.len() {
            return Err(Error::KeyExhausted {
                needed: len,
                available: self.remaining(),
            });
        }
        let offset = self.claimed;
        let segment = self.peek(offset, len)?;
        self.claimed += len;
        Ok((offset, segment))
    }
}

impl Ciphertext {
    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn key_offset(&self) -> usize {
        self.key_offset
    }

    /// Flips one ciphertext bit in place (0-based). Models in-transit
    /// tampering; XOR locality flips exactly that plaintext bit.
    pub fn flip_bit(&mut self, index: usize) {
        let flipped = self.bits.flipped(index);
        self.bits = flipped;
    }

    /// Assembles a ciphertext from raw parts. Only adversarial scenarios
    /// need this; honest traffic goes through [`otp_encrypt`].
    pub fn forged(bits: BitString, key_offset: usize) -> Self {
        Ciphertext { bits, key_offset }
    }
}

/// Encrypts `message` with the next unclaimed key segment.
pub fn otp_encrypt(key: &mut Key, message: &BitString) -> Result<Ciphertext> {
    let (key_offset, segment) = key.claim(message.len())?;
    Ok(Ciphertext {
        bits: message.xor(&segment)?,
        key_offset,
    })
}

/// Decrypts a ciphertext, claiming the matching segment of this key copy.
///
/// The decrypting copy must be exactly at the segment the ciphertext was
/// made with: behind means the segment was already consumed here
/// (one-time violation), ahead means material was skipped.
pub fn otp_decrypt(key: &mut Key, ciphertext: &Ciphertext) -> Result<BitString> {
    if key.claimed > ciphertext.key_offset {
        return Err(Error::OneTimeViolation(format!(
            "key segment at offset {} was already consumed (cursor at {})",
            ciphertext.key_offset, key.claimed
        )));
    }
    if key.claimed < ciphertext.key_offset {
        return Err(Error::invalid(format!(
            "ciphertext expects key offset {}, but this copy is at {}",
            ciphertext.key_offset, key.claimed
        )));
    }
    let (_, segment) = key.claim(ciphertext.bits.len())?;
    ciphertext.bits.xor(&segment)
}
