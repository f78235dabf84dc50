//! Simplified BB84 key exchange over simulated single-qubit states.
//!
//! Alice encodes random bits in random bases (rectilinear or diagonal),
//! an optional Eve intercepts and resends every qubit in a random basis,
//! Bob measures in random bases. Matching-basis positions are sifted, a
//! random sample is sacrificed to estimate the error rate, and the
//! exchange aborts when that rate crosses the threshold. No channel
//! noise: every sampled error is Eve's.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::quantum::{QubitIndex, StateVector};

use super::otp::Key;

/// Fewest raw qubits that still leave something to sample.
pub const MIN_RAW_COUNT: usize = 16;

/// Outcome of one BB84 exchange.
///
/// Serializes without the key material: reports carry the final key length
/// only.
#[derive(Debug, Clone, Serialize)]
pub struct Bb84Report {
    /// Qubits Alice transmitted.
    pub raw_count: usize,
    /// Positions where Alice's and Bob's bases matched.
    pub sifted_count: usize,
    /// Sifted positions sacrificed for error estimation.
    pub sample_count: usize,
    /// Observed error rate on the sample.
    pub qber: f64,
    /// Whether the simulated eavesdropper was active.
    pub eve_present: bool,
    /// True when the error rate crossed the abort threshold.
    pub aborted: bool,
    /// Length of the final key (zero when aborted).
    pub final_key_len: usize,
    #[serde(skip)]
    final_key: Key,
}

impl Bb84Report {
    /// The established key; empty when the exchange aborted.
    pub fn final_key(&self) -> &Key {
        &self.final_key
    }

    pub fn into_final_key(self) -> Key {
        self.final_key
    }
}

/// Runs one exchange.
///
/// `sample_fraction` of the sifted bits (rounded) are consumed estimating
/// the error rate; `qber_threshold` is the abort line. Eve, when present,
/// intercepts and resends every qubit.
pub fn bb84_exchange<R: Rng + ?Sized>(
    raw_count: usize,
    eve_present: bool,
    sample_fraction: f64,
    qber_threshold: f64,
    rng: &mut R,
) -> Result<Bb84Report> {
    if raw_count < MIN_RAW_COUNT {
        return Err(Error::invalid(format!(
            "raw count {raw_count} below the minimum {MIN_RAW_COUNT} needed for sampling"
        )));
    }
    if !(sample_fraction > 0.0 && sample_fraction < 1.0) {
        return Err(Error::invalid(format!(
            "sample fraction must lie in (0,1), got {sample_fraction}"
        )));
    }
    if !(0.0..=1.0).contains(&qber_threshold) {
        return Err(Error::invalid(format!(
            "error threshold must lie in [0,1], got {qber_threshold}"
        )));
    }

    let q1 = QubitIndex::new(1);
    let mut sifted: Vec<(u8, u8)> = Vec::with_capacity(raw_count / 2 + raw_count / 8);
    for _ in 0..raw_count {
        let alice_bit = u8::from(rng.random::<bool>());
        let alice_diagonal = rng.random::<bool>();
        let bob_diagonal = rng.random::<bool>();

        let mut qubit: StateVector<f64> = StateVector::basis(
            1,
            &BitString::from_bits(vec![alice_bit]).expect("binary"),
        )?;
        if alice_diagonal {
            qubit.apply_h(q1)?;
        }

        if eve_present {
            // Intercept-resend: measure in a random basis, forward the
            // re-prepared state.
            let eve_diagonal = rng.random::<bool>();
            if eve_diagonal {
                qubit.apply_h(q1)?;
            }
            qubit.measure(&[q1], rng)?;
            if eve_diagonal {
                qubit.apply_h(q1)?;
            }
        }

        if bob_diagonal {
            qubit.apply_h(q1)?;
        }
        let bob_bit = qubit.measure(&[q1], rng)?.get(0).expect("one bit");

        if alice_diagonal == bob_diagonal {
            sifted.push((alice_bit, bob_bit));
        }
    }

    let sifted_count = sifted.len();
    let sample_count = (sample_fraction * sifted_count as f64).round() as usize;

    let mut order: Vec<usize> = (0..sifted_count).collect();
    order.shuffle(rng);
    let (sample_idx, key_idx) = order.split_at(sample_count);

    let mismatches = sample_idx
        .iter()
        .filter(|&&i| sifted[i].0 != sifted[i].1)
        .count();
    let qber = if sample_count == 0 {
        0.0
    } else {
        mismatches as f64 / sample_count as f64
    };

    let aborted = qber > qber_threshold;
    let key_bits = if aborted {
        BitString::zeros(0)
    } else {
        let mut kept: Vec<usize> = key_idx.to_vec();
        kept.sort_unstable();
        BitString::from_bits(kept.iter().map(|&i| sifted[i].0).collect())?
    };

    Ok(Bb84Report {
        raw_count,
        sifted_count,
        sample_count,
        qber,
        eve_present,
        aborted,
        final_key_len: key_bits.len(),
        final_key: Key::from_bits(key_bits),
    })
}
