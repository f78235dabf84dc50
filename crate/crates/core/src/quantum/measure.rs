//! Born-rule sampling: computational-basis and Bell-basis measurement.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::state::{QubitIndex, StateVector};

/// Norm drift beyond which a double-precision state is considered
/// corrupted and refuses to be measured; the per-scalar gate is
/// [`crate::Scalar::measurement_norm_tolerance`].
pub const MEASUREMENT_NORM_TOLERANCE: f64 = 1e-6;

/// Slack allowed when checking that outcome probabilities sum to one.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

/// The four maximally entangled two-qubit outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    /// The message bit this outcome decodes to: Φ → 0, Ψ → 1.
    ///
    /// Minus variants never occur in honest runs; they decode to the same
    /// letter value and are flagged separately via [`Self::is_anomalous`].
    pub fn recovered_bit(self) -> u8 {
        match self {
            BellOutcome::PhiPlus | BellOutcome::PhiMinus => 0,
            BellOutcome::PsiPlus | BellOutcome::PsiMinus => 1,
        }
    }

    /// True for the minus outcomes, which only arise under phase tampering.
    pub fn is_anomalous(self) -> bool {
        matches!(self, BellOutcome::PhiMinus | BellOutcome::PsiMinus)
    }
}

/// Outcome of a Bell-basis measurement, with the Born probability it had.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellMeasurement<T: Scalar> {
    pub outcome: BellOutcome,
    pub probability: T,
}

const BELL_ORDER: [BellOutcome; 4] = [
    BellOutcome::PhiPlus,
    BellOutcome::PhiMinus,
    BellOutcome::PsiPlus,
    BellOutcome::PsiMinus,
];

/// (q1 bit, q2 bit, sign) entries of each Bell vector, amplitude 1/√2 each.
const BELL_SUPPORT: [[(usize, usize, f64); 2]; 4] = [
    [(0, 0, 1.0), (1, 1, 1.0)],  // Φ+
    [(0, 0, 1.0), (1, 1, -1.0)], // Φ−
    [(0, 1, 1.0), (1, 0, 1.0)],  // Ψ+
    [(0, 1, 1.0), (1, 0, -1.0)], // Ψ−
];

impl<T: Scalar> StateVector<T> {
    /// Measures the listed qubits in the computational basis, collapsing
    /// the state. The outcome string follows the order of `qubits`.
    pub fn measure<R: Rng + ?Sized>(
        &mut self,
        qubits: &[QubitIndex],
        rng: &mut R,
    ) -> Result<BitString> {
        if qubits.is_empty() {
            return Err(Error::invalid("nothing to measure"));
        }
        let masks = self.distinct_masks(qubits)?;
        self.check_measurable()?;

        let outcomes = 1usize << qubits.len();
        let mut probs = vec![T::zero(); outcomes];
        for (i, a) in self.amplitudes().iter().enumerate() {
            let mut o = 0usize;
            for &m in &masks {
                o = (o << 1) | usize::from(i & m != 0);
            }
            probs[o] += a.norm_sqr();
        }

        let picked = sample_index(&probs, rng);
        let keep = |i: usize| {
            let mut o = 0usize;
            for &m in &masks {
                o = (o << 1) | usize::from(i & m != 0);
            }
            o == picked
        };
        for (i, a) in self.amplitudes_mut().iter_mut().enumerate() {
            if !keep(i) {
                *a = Complex::new(T::zero(), T::zero());
            }
        }
        self.renormalize();

        let bits = (0..qubits.len())
            .map(|j| ((picked >> (qubits.len() - 1 - j)) & 1) as u8)
            .collect();
        BitString::from_bits(bits)
    }

    /// Measures all qubits, most significant first.
    pub fn measure_all<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<BitString> {
        let qubits: Vec<QubitIndex> = (1..=self.num_qubits()).map(QubitIndex::new).collect();
        self.measure(&qubits, rng)
    }

    /// Born probabilities of the four Bell outcomes on the qubit pair,
    /// in the order Φ+, Φ−, Ψ+, Ψ−.
    pub fn bell_probabilities(&self, q1: QubitIndex, q2: QubitIndex) -> Result<[T; 4]> {
        Ok(self.bell_projections(q1, q2)?.0)
    }

    /// Projects qubits `(q1, q2)` onto the Bell basis, sampling one outcome
    /// and collapsing the pair to the exact Bell state it landed in.
    pub fn bell_measure<R: Rng + ?Sized>(
        &mut self,
        q1: QubitIndex,
        q2: QubitIndex,
        rng: &mut R,
    ) -> Result<BellMeasurement<T>> {
        self.check_measurable()?;
        let (probs, coeffs, masks) = self.bell_projections(q1, q2)?;

        let total: T = probs.iter().copied().sum();
        if (total.to_f64_lossy() - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::Inconsistency(format!(
                "bell outcome probabilities sum to {total}, not 1"
            )));
        }

        let picked = sample_index(&probs, rng);
        let (m1, m2) = masks;
        let h = T::FRAC_1_SQRT_2();
        let scale = probs[picked].sqrt();

        let dim = self.amplitudes().len();
        let amps = self.amplitudes_mut();
        for a in amps.iter_mut() {
            *a = Complex::new(T::zero(), T::zero());
        }
        for rest in 0..dim {
            if rest & (m1 | m2) != 0 {
                continue;
            }
            let c = coeffs[picked][rest_slot(rest, m1, m2)];
            if c.norm_sqr() == T::zero() {
                continue;
            }
            for &(b1, b2, sign) in &BELL_SUPPORT[picked] {
                let idx = rest | (b1 * m1) | (b2 * m2);
                amps[idx] = c * Complex::new(T::from_f64_const(sign) * h / scale, T::zero());
            }
        }

        Ok(BellMeasurement {
            outcome: BELL_ORDER[picked],
            probability: probs[picked],
        })
    }

    /// Per-outcome probabilities plus the rest-register projection
    /// coefficients needed for collapse.
    #[allow(clippy::type_complexity)]
    fn bell_projections(
        &self,
        q1: QubitIndex,
        q2: QubitIndex,
    ) -> Result<([T; 4], Vec<Vec<Complex<T>>>, (usize, usize))> {
        if q1 == q2 {
            return Err(Error::invalid("bell measurement needs two distinct qubits"));
        }
        let m1 = self.qubit_mask(q1)?;
        let m2 = self.qubit_mask(q2)?;

        let dim = self.amplitudes().len();
        let h = T::FRAC_1_SQRT_2();
        let mut probs = [T::zero(); 4];
        let mut coeffs: Vec<Vec<Complex<T>>> =
            vec![vec![Complex::new(T::zero(), T::zero()); dim / 4]; 4];

        for rest in 0..dim {
            if rest & (m1 | m2) != 0 {
                continue;
            }
            let slot = rest_slot(rest, m1, m2);
            for (k, support) in BELL_SUPPORT.iter().enumerate() {
                let mut c = Complex::new(T::zero(), T::zero());
                for &(b1, b2, sign) in support {
                    let idx = rest | (b1 * m1) | (b2 * m2);
                    c += self.amplitudes()[idx]
                        * Complex::new(T::from_f64_const(sign) * h, T::zero());
                }
                coeffs[k][slot] = c;
                probs[k] += c.norm_sqr();
            }
        }
        Ok((probs, coeffs, (m1, m2)))
    }

    fn distinct_masks(&self, qubits: &[QubitIndex]) -> Result<Vec<usize>> {
        let mut masks = Vec::with_capacity(qubits.len());
        for &q in qubits {
            let m = self.qubit_mask(q)?;
            if masks.contains(&m) {
                return Err(Error::invalid(format!(
                    "qubit {} listed more than once",
                    q.get()
                )));
            }
            masks.push(m);
        }
        Ok(masks)
    }

    fn check_measurable(&self) -> Result<()> {
        let drift = (self.norm().to_f64_lossy() - 1.0).abs();
        if drift > T::measurement_norm_tolerance() {
            return Err(Error::Inconsistency(format!(
                "state norm drifted by {drift:.3e}; refusing to measure"
            )));
        }
        Ok(())
    }
}

/// Packs a rest-register index (both measured-qubit bits clear) into a
/// dense slot in `0..dim/4`.
fn rest_slot(rest: usize, m1: usize, m2: usize) -> usize {
    let (lo, hi) = if m1 < m2 { (m1, m2) } else { (m2, m1) };
    let below = rest & (lo - 1);
    let mid = (rest & (hi - 1) & !(lo | (lo - 1))) >> 1;
    let above = (rest & !(hi | (hi - 1))) >> 2;
    below | mid | above
}

/// Samples an index from an unnormalized probability table.
fn sample_index<T: Scalar, R: Rng + ?Sized>(probs: &[T], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut cumulative = 0.0;
    for (i, p) in probs.iter().enumerate() {
        cumulative += p.to_f64_lossy();
        if u < cumulative {
            return i;
        }
    }
    // Numeric residue: fall back to the last outcome with support.
    probs
        .iter()
        .rposition(|p| p.to_f64_lossy() > 0.0)
        .unwrap_or(probs.len() - 1)
}
