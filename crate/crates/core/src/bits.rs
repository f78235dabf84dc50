//! Fixed-length binary strings.
//!
//! Messages, keys, codewords and attack masks are all bit strings. Bits are
//! stored one per byte and indexed from 0 internally; user-facing position
//! lists (mismatches, anomalies, attack masks) are 1-based to match particle
//! numbering, via the `_1based` helpers.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A sequence of bits, e.g. `"011011"`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<u8>);

impl BitString {
    /// All-zero string of the given length.
    pub fn zeros(len: usize) -> Self {
        BitString(vec![0; len])
    }

    /// Builds from raw bits; every element must be 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::invalid(format!("bit value {b} out of range")));
        }
        Ok(BitString(bits))
    }

    /// Uniformly random string of the given length.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        BitString((0..len).map(|_| u8::from(rng.random::<bool>())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bit at 0-based index `i`.
    pub fn get(&self, i: usize) -> Option<u8> {
        self.0.get(i).copied()
    }

    pub fn set(&mut self, i: usize, value: u8) {
        assert!(value <= 1, "bit value out of range");
        self.0[i] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// Number of set bits.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_zero(&self) -> bool {
        self.weight() == 0
    }

    /// Bitwise XOR of equal-length strings.
    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "xor length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(BitString(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    /// Hamming distance between equal-length strings.
    pub fn hamming(&self, other: &BitString) -> Result<usize> {
        Ok(self.xor(other)?.weight())
    }

    /// Copy with the bit at 0-based index `i` flipped.
    pub fn flipped(&self, i: usize) -> BitString {
        let mut out = self.clone();
        out.0[i] ^= 1;
        out
    }

    /// 1-based positions of the set bits, ascending.
    pub fn ones_1based(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Builds a mask of length `len` with ones at the given 1-based positions.
    pub fn from_positions_1based(len: usize, positions: &[usize]) -> Result<Self> {
        let mut out = BitString::zeros(len);
        for &p in positions {
            if p == 0 || p > len {
                return Err(Error::invalid(format!(
                    "position {p} out of range 1..={len}"
                )));
            }
            out.0[p - 1] = 1;
        }
        Ok(out)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::invalid(format!("invalid bit character {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BitString)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
