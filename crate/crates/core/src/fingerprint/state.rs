//! Fingerprint states and the swap-test comparator.
//!
//! A fingerprint of an n-bit message x is the (log2(m)+1)-qubit state with
//! amplitude 1/√m on |i−1⟩|E_i(x)⟩ for each codeword position i. Two
//! fingerprints are compared with the swap-test circuit, which accepts
//! equal states with certainty and unequal ones with probability
//! (1 + s²)/2, s being their overlap.
//!
//! Fingerprint values are deliberately neither cloneable nor serializable:
//! a state is consumed by the one comparison it participates in, and only
//! construction parameters ever travel between parties.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{QubitIndex, StateVector};
use crate::scalar::Scalar;

use super::code::LinearCode;

/// The quantum fingerprint |f(x)⟩ of one message under one code.
#[derive(Debug)]
pub struct FingerprintState<T: Scalar> {
    state: StateVector<T>,
    code_id: u64,
}

/// Verdict of a repeated swap-test comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonVerdict {
    Equal,
    Unequal,
}

impl LinearCode {
    /// Builds |f(x)⟩: a uniform superposition over |i−1⟩|E_i(x)⟩, with the
    /// position register (log2(m) qubits, most significant first) followed
    /// by one codeword-bit qubit.
    pub fn fingerprint<T: Scalar>(&self, x: &crate::bits::BitString) -> Result<FingerprintState<T>> {
        let codeword = self.encode(x)?;
        let m = self.codeword_len();
        let qubits = self.fingerprint_qubits();
        if qubits > crate::quantum::MAX_QUBITS {
            return Err(Error::Capability(format!(
                "fingerprint needs {qubits} qubits, above the register cap"
            )));
        }
        let amp = T::one() / T::from_f64_const(m as f64).sqrt();
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << qubits];
        for (i, bit) in codeword.iter().enumerate() {
            amps[(i << 1) | bit as usize] = Complex::new(amp, T::zero());
        }
        Ok(FingerprintState {
            state: StateVector::from_amplitudes(qubits, amps)?,
            code_id: self.id(),
        })
    }
}

impl<T: Scalar> FingerprintState<T> {
    pub fn state(&self) -> &StateVector<T> {
        &self.state
    }

    pub fn num_qubits(&self) -> usize {
        self.state.num_qubits()
    }

    pub fn code_id(&self) -> u64 {
        self.code_id
    }

    fn check_comparable(&self, other: &FingerprintState<T>) -> Result<()> {
        if self.code_id != other.code_id {
            return Err(Error::invalid(
                "fingerprints were built under different codes",
            ));
        }
        Ok(())
    }
}

/// Inner product ⟨f(x)|f(y)⟩ of two fingerprints under the same code,
/// computed from the state vectors. Equals 1 − d_H(E(x), E(y))/m.
pub fn overlap<T: Scalar>(a: &FingerprintState<T>, b: &FingerprintState<T>) -> Result<T> {
    a.check_comparable(b)?;
    Ok(a.state.inner(&b.state)?.re)
}

/// One swap test: ancilla ⊗ a ⊗ b, Hadamard on the ancilla, pairwise
/// controlled-SWAP of the two registers, Hadamard again, then a
/// computational measurement of the ancilla. Accepts on outcome 0.
///
/// Both fingerprints are consumed; the measurement destroys them.
pub fn swap_test<T: Scalar, R: Rng + ?Sized>(
    a: FingerprintState<T>,
    b: FingerprintState<T>,
    rng: &mut R,
) -> Result<bool> {
    a.check_comparable(&b)?;
    let q = a.num_qubits();
    let ancilla = QubitIndex::new(1);

    let zero = StateVector::basis(1, &"0".parse().expect("literal"))?;
    let mut joint = zero.tensor(&a.state)?.tensor(&b.state)?;

    joint.apply_h(ancilla)?;
    for i in 1..=q {
        joint.apply_cswap(ancilla, QubitIndex::new(1 + i), QubitIndex::new(1 + q + i))?;
    }
    joint.apply_h(ancilla)?;

    let outcome = joint.measure(&[ancilla], rng)?;
    Ok(outcome.get(0) == Some(0))
}

/// Runs up to `trials` swap tests on fresh fingerprint pairs pulled from
/// the two suppliers; returns [`ComparisonVerdict::Unequal`] on the first
/// rejection. Equal inputs therefore always compare Equal, and unequal
/// inputs slip through with probability ((1 + s²)/2)^trials.
pub fn repeated_swap_test<T, A, B, R>(
    mut source_a: A,
    mut source_b: B,
    trials: usize,
    rng: &mut R,
) -> Result<ComparisonVerdict>
where
    T: Scalar,
    A: FnMut() -> Result<FingerprintState<T>>,
    B: FnMut() -> Result<FingerprintState<T>>,
    R: Rng + ?Sized,
{
    if trials == 0 {
        return Err(Error::invalid("repeated swap test needs at least one trial"));
    }
    for _ in 0..trials {
        let a = source_a()?;
        let b = source_b()?;
        if !swap_test(a, b, rng)? {
            return Ok(ComparisonVerdict::Unequal);
        }
    }
    Ok(ComparisonVerdict::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::rng::seeded;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn f64_fingerprint(code: &LinearCode, x: &str) -> FingerprintState<f64> {
        code.fingerprint(&bits(x)).unwrap()
    }

    #[test]
    fn single_bit_fixture_matches_the_hand_computed_state() {
        // n = 1, m = 2, E("1") = "11": |f(1)⟩ = (|0⟩|1⟩ + |1⟩|1⟩)/√2.
        let code = LinearCode::repetition(1, 2).unwrap();
        assert_eq!(code.encode(&bits("1")).unwrap(), bits("11"));
        let f = f64_fingerprint(&code, "1");
        assert_eq!(f.num_qubits(), 2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((f.state().amplitude(&bits("01")).unwrap().re - h).abs() < 1e-12);
        assert!((f.state().amplitude(&bits("11")).unwrap().re - h).abs() < 1e-12);
    }

    #[test]
    fn fingerprints_are_uniform_over_exactly_m_kets() {
        let code = LinearCode::make(5, 2.0, 3).unwrap();
        let m = code.codeword_len();
        let mut rng = seeded(9);
        for _ in 0..8 {
            let x = BitString::random(5, &mut rng);
            let f: FingerprintState<f64> = code.fingerprint(&x).unwrap();
            let expected = 1.0 / (m as f64).sqrt();
            let nonzero: Vec<f64> = f
                .state()
                .amplitudes()
                .iter()
                .filter(|a| a.norm_sqr() > 0.0)
                .map(|a| a.norm())
                .collect();
            assert_eq!(nonzero.len(), m);
            assert!(nonzero.iter().all(|&v| (v - expected).abs() < 1e-12));
        }
    }

    #[test]
    fn a_64_bit_message_at_ratio_two_fits_in_eight_qubits() {
        let code = LinearCode::make(64, 2.0, 42).unwrap();
        assert_eq!(code.codeword_len(), 128);
        assert_eq!(code.fingerprint_qubits(), 8);
        let f: FingerprintState<f64> = code.fingerprint(&BitString::zeros(64)).unwrap();
        assert_eq!(f.num_qubits(), 8);
    }

    #[test]
    fn overlap_identities() {
        let code = LinearCode::make(4, 2.0, 7).unwrap();
        let same = overlap(
            &f64_fingerprint(&code, "0110"),
            &f64_fingerprint(&code, "0110"),
        )
        .unwrap();
        assert!((same - 1.0).abs() < 1e-12);

        // All-positions-different codewords are orthogonal.
        let rep = LinearCode::repetition(1, 2).unwrap();
        let ortho = overlap(&f64_fingerprint(&rep, "0"), &f64_fingerprint(&rep, "1")).unwrap();
        assert!(ortho.abs() < 1e-12);
    }

    #[test]
    fn overlap_equals_one_minus_normalized_distance() {
        let code = LinearCode::make(4, 2.0, 7).unwrap();
        let m = code.codeword_len() as f64;
        let pairs = [("0001", "0010"), ("1111", "0000"), ("1010", "1011")];
        for (x, y) in pairs {
            let d = code
                .encode(&bits(x))
                .unwrap()
                .hamming(&code.encode(&bits(y)).unwrap())
                .unwrap();
            let s = overlap(&f64_fingerprint(&code, x), &f64_fingerprint(&code, y)).unwrap();
            assert!(
                (s - (1.0 - d as f64 / m)).abs() < 1e-12,
                "pair ({x},{y}): overlap {s} vs distance {d}"
            );
        }
    }

    #[test]
    fn cross_code_comparisons_are_rejected() {
        let a = LinearCode::make(4, 2.0, 7).unwrap();
        let b = LinearCode::make(4, 2.0, 8).unwrap();
        let fa = f64_fingerprint(&a, "0001");
        let fb = f64_fingerprint(&b, "0001");
        assert!(overlap(&fa, &fb).is_err());
        let mut rng = seeded(1);
        assert!(swap_test(fa, fb, &mut rng).is_err());
    }

    #[test]
    fn equal_fingerprints_are_never_rejected() {
        let code = LinearCode::make(6, 2.0, 11).unwrap();
        let mut rng = seeded(23);
        for _ in 0..200 {
            let a = f64_fingerprint(&code, "011010");
            let b = f64_fingerprint(&code, "011010");
            assert!(swap_test(a, b, &mut rng).unwrap());
        }
    }

    #[test]
    fn orthogonal_fingerprints_accept_half_the_time() {
        let code = LinearCode::repetition(1, 2).unwrap();
        let mut rng = seeded(31);
        let trials = 4000;
        let mut accepts = 0usize;
        for _ in 0..trials {
            let a = f64_fingerprint(&code, "0");
            let b = f64_fingerprint(&code, "1");
            if swap_test(a, b, &mut rng).unwrap() {
                accepts += 1;
            }
        }
        let rate = accepts as f64 / trials as f64;
        let sigma = (0.5 * 0.5 / trials as f64).sqrt();
        assert!((rate - 0.5).abs() < 3.0 * sigma, "rate {rate}");
    }

    #[test]
    fn three_quarter_overlap_accepts_at_the_analytic_rate() {
        // Repetition fixture n = 4, copies = 2: one flipped message bit
        // changes 2 of 8 codeword positions, so s = 0.75.
        let code = LinearCode::repetition(4, 2).unwrap();
        let x = "0110";
        let y = "0010";
        let s = overlap(&f64_fingerprint(&code, x), &f64_fingerprint(&code, y)).unwrap();
        assert!((s - 0.75).abs() < 1e-12);

        let p = (1.0 + s * s) / 2.0;
        assert!((p - 0.78125).abs() < 1e-12);

        let mut rng = seeded(37);
        let trials = 4000;
        let mut accepts = 0usize;
        for _ in 0..trials {
            let a = f64_fingerprint(&code, x);
            let b = f64_fingerprint(&code, y);
            if swap_test(a, b, &mut rng).unwrap() {
                accepts += 1;
            }
        }
        let rate = accepts as f64 / trials as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((rate - p).abs() < 3.0 * sigma, "rate {rate} vs {p}");
    }

    #[test]
    fn repeated_test_on_equal_inputs_always_returns_equal() {
        let code = LinearCode::make(4, 2.0, 7).unwrap();
        let mut rng = seeded(41);
        for _ in 0..50 {
            let verdict = repeated_swap_test(
                || code.fingerprint::<f64>(&bits("1001")),
                || code.fingerprint::<f64>(&bits("1001")),
                20,
                &mut rng,
            )
            .unwrap();
            assert_eq!(verdict, ComparisonVerdict::Equal);
        }
    }

    #[test]
    fn orthogonal_inputs_slip_through_at_two_to_the_minus_trials() {
        let code = LinearCode::repetition(1, 2).unwrap();
        let mut rng = seeded(43);
        let runs = 20_000;
        let trials = 10;
        let mut false_equal = 0usize;
        for _ in 0..runs {
            let verdict = repeated_swap_test(
                || code.fingerprint::<f64>(&bits("0")),
                || code.fingerprint::<f64>(&bits("1")),
                trials,
                &mut rng,
            )
            .unwrap();
            if verdict == ComparisonVerdict::Equal {
                false_equal += 1;
            }
        }
        // P(false Equal) = 2^-10 ≈ 9.77e-4; 3σ band over 20k runs.
        let p = 0.5f64.powi(trials as i32);
        let expected = runs as f64 * p;
        let sigma = (runs as f64 * p * (1.0 - p)).sqrt();
        let dev = (false_equal as f64 - expected).abs();
        assert!(dev < 3.0 * sigma, "false equals {false_equal}, expected {expected:.1}");
    }

    #[test]
    fn supplier_exhaustion_surfaces_as_a_resource_error() {
        let code = LinearCode::make(4, 2.0, 7).unwrap();
        let mut remaining = vec![
            code.fingerprint::<f64>(&bits("1001")).unwrap(),
        ];
        let mut rng = seeded(47);
        let result = repeated_swap_test(
            || {
                remaining
                    .pop()
                    .ok_or_else(|| Error::Resource("deposited copies exhausted".into()))
            },
            || code.fingerprint::<f64>(&bits("1001")),
            5,
            &mut rng,
        );
        assert!(matches!(result, Err(Error::Resource(_))));
    }

    #[test]
    fn single_precision_fingerprints_behave() {
        let code = LinearCode::repetition(4, 2).unwrap();
        let a: FingerprintState<f32> = code.fingerprint(&bits("0110")).unwrap();
        let b: FingerprintState<f32> = code.fingerprint(&bits("0110")).unwrap();
        assert!((overlap(&a, &b).unwrap() - 1.0).abs() < 1e-6);
        let mut rng = seeded(59);
        assert!(swap_test(a, b, &mut rng).unwrap());
    }

    #[test]
    fn zero_trials_is_invalid() {
        let code = LinearCode::make(4, 2.0, 7).unwrap();
        let mut rng = seeded(53);
        assert!(repeated_swap_test(
            || code.fingerprint::<f64>(&bits("1001")),
            || code.fingerprint::<f64>(&bits("1001")),
            0,
            &mut rng,
        )
        .is_err());
    }
}
