//! Binary linear error-correcting codes over GF(2).
//!
//! A code maps n input bits to m codeword bits through a full-rank
//! pseudorandom generator matrix, with m rounded up to a power of two so
//! the fingerprint register is exactly log2(m)+1 qubits. The matrix is
//! derived deterministically from a seed: anyone holding (n, c, seed) can
//! rebuild the identical code.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng;

/// Input lengths above this exceed the row-mask representation.
pub const MAX_CODE_INPUT_BITS: usize = 128;

/// Exhaustive minimum-distance search is limited to this input length.
pub const MAX_EXACT_DISTANCE_BITS: usize = 16;

const FULL_RANK_ATTEMPTS: usize = 64;

/// A binary linear code E : {0,1}^n → {0,1}^m with expansion ratio m/n > 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCode {
    n: usize,
    m: usize,
    c_requested: f64,
    seed: u64,
    /// Row i taps the inputs feeding codeword bit i+1 (input j ↔ mask bit j).
    rows: Vec<u128>,
}

impl LinearCode {
    /// Builds the pseudorandom full-rank code for `(n, c_requested, seed)`.
    ///
    /// The codeword length is the smallest power of two at or above
    /// `c_requested · n`. Construction retries fresh random matrices until
    /// one has full column rank; the retry budget failing is a
    /// [`Error::Construction`].
    pub fn make(n: usize, c_requested: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("code input length must be at least 1"));
        }
        if n > MAX_CODE_INPUT_BITS {
            return Err(Error::Capability(format!(
                "input length {n} exceeds {MAX_CODE_INPUT_BITS} bits"
            )));
        }
        if !c_requested.is_finite() || c_requested <= 1.0 {
            return Err(Error::invalid(format!(
                "expansion ratio must exceed 1, got {c_requested}"
            )));
        }
        let target = c_requested * n as f64;
        if target > (1u64 << 32) as f64 {
            return Err(Error::invalid(format!(
                "expansion ratio {c_requested} is out of range"
            )));
        }
        let mut m = 1usize;
        while (m as f64) < target {
            m <<= 1;
        }

        let mut source = rng::seeded(seed);
        let input_mask: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        for _ in 0..FULL_RANK_ATTEMPTS {
            let rows: Vec<u128> = (0..m)
                .map(|_| {
                    let lo = source.random::<u64>() as u128;
                    let hi = source.random::<u64>() as u128;
                    ((hi << 64) | lo) & input_mask
                })
                .collect();
            if gf2_rank(&rows) == n {
                return Ok(LinearCode { n, m, c_requested, seed, rows });
            }
        }
        Err(Error::Construction(format!(
            "no full-rank {m}x{n} generator found in {FULL_RANK_ATTEMPTS} attempts"
        )))
    }

    /// Repetition-style fixture: input bit b feeds codeword bits
    /// b·copies .. (b+1)·copies. Used for calibration cases with known
    /// distance (d_min = copies); n·copies must be a power of two.
    pub fn repetition(n: usize, copies: usize) -> Result<Self> {
        if n == 0 || copies == 0 {
            return Err(Error::invalid("repetition code needs n ≥ 1 and copies ≥ 1"));
        }
        if n > MAX_CODE_INPUT_BITS {
            return Err(Error::Capability(format!(
                "input length {n} exceeds {MAX_CODE_INPUT_BITS} bits"
            )));
        }
        let m = n * copies;
        if !m.is_power_of_two() || m < 2 * n {
            return Err(Error::invalid(format!(
                "repetition fixture needs m = n·copies a power of two with copies ≥ 2, got m = {m}"
            )));
        }
        let rows = (0..m).map(|i| 1u128 << (i / copies)).collect();
        Ok(LinearCode {
            n,
            m,
            c_requested: copies as f64,
            seed: 0,
            rows,
        })
    }

    pub fn input_len(&self) -> usize {
        self.n
    }

    pub fn codeword_len(&self) -> usize {
        self.m
    }

    /// Effective expansion ratio m/n.
    pub fn expansion(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    pub fn requested_expansion(&self) -> f64 {
        self.c_requested
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Qubits a fingerprint of this code occupies: log2(m) + 1.
    pub fn fingerprint_qubits(&self) -> usize {
        self.m.trailing_zeros() as usize + 1
    }

    /// Stable identity used to refuse cross-code state comparisons.
    pub fn id(&self) -> u64 {
        let mut h = mix(0x9e37_79b9, self.n as u64);
        h = mix(h, self.m as u64);
        h = mix(h, self.seed);
        h = mix(h, self.c_requested.to_bits());
        for &row in &self.rows {
            h = mix(h, row as u64);
            h = mix(h, (row >> 64) as u64);
        }
        h
    }

    /// Encodes an n-bit message: codeword bit i is the GF(2) dot product
    /// of generator row i with the message.
    pub fn encode(&self, x: &BitString) -> Result<BitString> {
        let mask = self.message_mask(x)?;
        let bits = self
            .rows
            .iter()
            .map(|row| ((row & mask).count_ones() & 1) as u8)
            .collect();
        BitString::from_bits(bits)
    }

    /// Minimum Hamming weight over all nonzero codewords, by exhaustive
    /// enumeration (hence the n ≤ 16 bound).
    pub fn min_distance(&self) -> Result<usize> {
        if self.n > MAX_EXACT_DISTANCE_BITS {
            return Err(Error::Capability(format!(
                "exhaustive distance search is limited to n ≤ {MAX_EXACT_DISTANCE_BITS}, got n = {}",
                self.n
            )));
        }
        let mut best = self.m + 1;
        for x in 1u128..(1u128 << self.n) {
            let weight: usize = self
                .rows
                .iter()
                .map(|row| ((row & x).count_ones() & 1) as usize)
                .sum();
            best = best.min(weight);
        }
        Ok(best)
    }

    /// Generator rows as n-character bitstrings (row i = codeword bit i+1).
    pub fn generator_rows(&self) -> Vec<BitString> {
        self.rows
            .iter()
            .map(|row| {
                let bits = (0..self.n).map(|j| ((row >> j) & 1) as u8).collect();
                BitString::from_bits(bits).expect("bits are binary")
            })
            .collect()
    }

    fn message_mask(&self, x: &BitString) -> Result<u128> {
        if x.len() != self.n {
            return Err(Error::invalid(format!(
                "message length {} does not match code input length {}",
                x.len(),
                self.n
            )));
        }
        let mut mask = 0u128;
        for (j, b) in x.iter().enumerate() {
            mask |= u128::from(b) << j;
        }
        Ok(mask)
    }
}

/// Rank of a set of n-bit row vectors over GF(2).
fn gf2_rank(rows: &[u128]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for &row in rows {
        let mut v = row;
        for &b in &basis {
            let pivot = 1u128 << (127 - b.leading_zeros());
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

fn mix(state: u64, value: u64) -> u64 {
    let mut z = state ^ value.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Wire form: `{n, m, c_requested, seed, generator: ["0101", ...]}`.
#[derive(Serialize, Deserialize)]
struct CodeWire {
    n: usize,
    m: usize,
    c_requested: f64,
    seed: u64,
    generator: Vec<BitString>,
}

impl Serialize for LinearCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CodeWire {
            n: self.n,
            m: self.m,
            c_requested: self.c_requested,
            seed: self.seed,
            generator: self.generator_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearCode {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let wire = CodeWire::deserialize(deserializer)?;
        if wire.n == 0 || wire.n > MAX_CODE_INPUT_BITS {
            return Err(D::Error::custom(format!("bad input length {}", wire.n)));
        }
        if !wire.m.is_power_of_two() || wire.m <= wire.n {
            return Err(D::Error::custom(format!("bad codeword length {}", wire.m)));
        }
        if wire.generator.len() != wire.m {
            return Err(D::Error::custom("generator row count does not match m"));
        }
        let mut rows = Vec::with_capacity(wire.m);
        for bs in &wire.generator {
            if bs.len() != wire.n {
                return Err(D::Error::custom("generator row width does not match n"));
            }
            let mut mask = 0u128;
            for (j, b) in bs.iter().enumerate() {
                mask |= u128::from(b) << j;
            }
            rows.push(mask);
        }
        Ok(LinearCode {
            n: wire.n,
            m: wire.m,
            c_requested: wire.c_requested,
            seed: wire.seed,
            rows,
        })
    }
}
