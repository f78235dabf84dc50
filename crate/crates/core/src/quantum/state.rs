//! Dense state vectors over a small number of qubits.

use num_complex::Complex;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard cap on register width; dense vectors beyond this are out of scope.
pub const MAX_QUBITS: usize = 24;

/// Norm drift tolerated on construction of double-precision states; the
/// per-scalar gate is [`crate::Scalar::construction_norm_tolerance`].
pub const NORM_TOLERANCE: f64 = 1e-9;

/// 1-based qubit position within a register.
///
/// Qubit 1 is the leftmost ket position and maps to the most significant
/// bit of the amplitude index, so amplitude dumps read like ket notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitIndex(usize);

impl QubitIndex {
    /// Wraps a 1-based position.
    ///
    /// Panics on 0; positions are validated against a register width when
    /// a gate or measurement uses them.
    pub const fn new(index: usize) -> Self {
        assert!(index >= 1, "qubit positions are 1-based");
        QubitIndex(index)
    }

    pub const fn get(self) -> usize {
        self.0
    }
}

impl From<usize> for QubitIndex {
    fn from(index: usize) -> Self {
        QubitIndex::new(index)
    }
}

/// A normalized complex amplitude vector over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Scalar> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// The computational basis state for the given bits, e.g. `"011"`.
    pub fn basis(num_qubits: usize, bits: &BitString) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::invalid("state needs at least one qubit"));
        }
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capability(format!(
                "{num_qubits} qubits exceeds the {MAX_QUBITS}-qubit cap"
            )));
        }
        if bits.len() != num_qubits {
            return Err(Error::invalid(format!(
                "bit string length {} does not match {num_qubits} qubits",
                bits.len()
            )));
        }
        let mut index = 0usize;
        for b in bits.iter() {
            index = (index << 1) | b as usize;
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(StateVector { num_qubits, amps })
    }

    /// The three-qubit state (|000⟩ + |111⟩)/√2.
    pub fn ghz() -> Self {
        let h = T::FRAC_1_SQRT_2();
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 8];
        amps[0b000] = Complex::new(h, T::zero());
        amps[0b111] = Complex::new(h, T::zero());
        StateVector { num_qubits: 3, amps }
    }

    /// Builds from raw amplitudes; the length must be 2^k and the norm 1
    /// within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::invalid(format!(
                "qubit count {num_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        if amps.len() != 1 << num_qubits {
            return Err(Error::invalid(format!(
                "amplitude vector length {} is not 2^{num_qubits}",
                amps.len()
            )));
        }
        let state = StateVector { num_qubits, amps };
        let drift = (state.norm().to_f64_lossy() - 1.0).abs();
        if drift > T::construction_norm_tolerance() {
            return Err(Error::invalid(format!(
                "amplitudes are not normalized (norm drift {drift:.3e})"
            )));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    /// Amplitude of the given basis ket.
    pub fn amplitude(&self, bits: &BitString) -> Result<Complex<T>> {
        if bits.len() != self.num_qubits {
            return Err(Error::invalid(format!(
                "ket length {} does not match {} qubits",
                bits.len(),
                self.num_qubits
            )));
        }
        let mut index = 0usize;
        for b in bits.iter() {
            index = (index << 1) | b as usize;
        }
        Ok(self.amps[index])
    }

    /// L2 norm; 1 for any physical state.
    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt()
    }

    pub(crate) fn renormalize(&mut self) {
        let n = self.norm();
        for a in &mut self.amps {
            *a /= n;
        }
    }

    /// Kronecker product; `self`'s qubits come first (leftmost).
    pub fn tensor(&self, other: &StateVector<T>) -> Result<StateVector<T>> {
        let num_qubits = self.num_qubits + other.num_qubits;
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capability(format!(
                "{num_qubits} qubits exceeds the {MAX_QUBITS}-qubit cap"
            )));
        }
        let mut amps = Vec::with_capacity(1 << num_qubits);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { num_qubits, amps })
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        self.check_same_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            }))
    }

    /// Plain L2 distance ‖self − other‖.
    pub fn l2_distance(&self, other: &StateVector<T>) -> Result<T> {
        self.check_same_shape(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |acc, (a, b)| acc + (a - b).norm_sqr())
            .sqrt())
    }

    /// L2 distance minimized over a global phase on `other`.
    ///
    /// Global phase is physically meaningless; comparisons that should treat
    /// e^{iφ}|ψ⟩ as |ψ⟩ use this.
    pub fn l2_distance_up_to_phase(&self, other: &StateVector<T>) -> Result<T> {
        let overlap = self.inner(other)?;
        let a2 = self.amps.iter().fold(T::zero(), |s, a| s + a.norm_sqr());
        let b2 = other.amps.iter().fold(T::zero(), |s, a| s + a.norm_sqr());
        // min over φ of ‖a − e^{iφ} b‖² = ‖a‖² + ‖b‖² − 2|⟨a|b⟩|
        let d2 = a2 + b2 - (T::one() + T::one()) * overlap.norm();
        Ok(d2.max(T::zero()).sqrt())
    }

    /// One line per nonzero amplitude: `bits: re+im i`, 12 significant digits.
    pub fn dump(&self) -> String {
        let floor = T::from_f64_const(1e-24);
        let mut out = String::new();
        for (index, amp) in self.amps.iter().enumerate() {
            if amp.norm_sqr() <= floor {
                continue;
            }
            let bits = self.index_bits(index);
            out.push_str(&format!("{bits}: {:.11e}{:+.11e} i\n", amp.re, amp.im));
        }
        out
    }

    /// Basis-index bit mask selecting qubit `q` (qubit 1 = MSB).
    pub(crate) fn qubit_mask(&self, q: QubitIndex) -> Result<usize> {
        if q.get() > self.num_qubits {
            return Err(Error::invalid(format!(
                "qubit {} out of range for a {}-qubit state",
                q.get(),
                self.num_qubits
            )));
        }
        Ok(1 << (self.num_qubits - q.get()))
    }

    pub(crate) fn index_bits(&self, index: usize) -> BitString {
        let bits = (0..self.num_qubits)
            .map(|i| ((index >> (self.num_qubits - 1 - i)) & 1) as u8)
            .collect();
        BitString::from_bits(bits).expect("bits are binary")
    }

    fn check_same_shape(&self, other: &StateVector<T>) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::invalid(format!(
                "qubit count mismatch: {} vs {}",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }
}
