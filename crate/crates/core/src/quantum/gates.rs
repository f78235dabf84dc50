//! The gate set the protocol needs: X, Z, H, CNOT, controlled-SWAP.
//!
//! Gates mutate the state in place. Each one is a permutation or butterfly
//! over amplitude pairs, so application is a single linear pass.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::state::{QubitIndex, StateVector};

impl<T: Scalar> StateVector<T> {
    /// Pauli-X (bit flip) on qubit `q`.
    pub fn apply_x(&mut self, q: QubitIndex) -> Result<()> {
        let mask = self.qubit_mask(q)?;
        let amps = self.amplitudes_mut();
        for i in 0..amps.len() {
            if i & mask == 0 {
                amps.swap(i, i | mask);
            }
        }
        Ok(())
    }

    /// Pauli-Z (phase flip) on qubit `q`.
    pub fn apply_z(&mut self, q: QubitIndex) -> Result<()> {
        let mask = self.qubit_mask(q)?;
        let amps = self.amplitudes_mut();
        for (i, a) in amps.iter_mut().enumerate() {
            if i & mask != 0 {
                *a = -*a;
            }
        }
        Ok(())
    }

    /// Hadamard on qubit `q`.
    pub fn apply_h(&mut self, q: QubitIndex) -> Result<()> {
        let mask = self.qubit_mask(q)?;
        let h = T::FRAC_1_SQRT_2();
        let amps = self.amplitudes_mut();
        for i in 0..amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (amps[i], amps[i | mask]);
                amps[i] = (a0 + a1) * h;
                amps[i | mask] = (a0 - a1) * h;
            }
        }
        Ok(())
    }

    /// Controlled-NOT: flips `target` where `control` is 1.
    pub fn apply_cnot(&mut self, control: QubitIndex, target: QubitIndex) -> Result<()> {
        if control == target {
            return Err(Error::invalid("cnot control and target must differ"));
        }
        let cmask = self.qubit_mask(control)?;
        let tmask = self.qubit_mask(target)?;
        let amps = self.amplitudes_mut();
        for i in 0..amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                amps.swap(i, i | tmask);
            }
        }
        Ok(())
    }

    /// Controlled-SWAP: exchanges qubits `a` and `b` where `ctrl` is 1.
    pub fn apply_cswap(&mut self, ctrl: QubitIndex, a: QubitIndex, b: QubitIndex) -> Result<()> {
        if ctrl == a || ctrl == b || a == b {
            return Err(Error::invalid("cswap qubits must be pairwise distinct"));
        }
        let cmask = self.qubit_mask(ctrl)?;
        let amask = self.qubit_mask(a)?;
        let bmask = self.qubit_mask(b)?;
        let amps = self.amplitudes_mut();
        for i in 0..amps.len() {
            // Visit each swapped pair once, from its (a=0, b=1) member.
            if i & cmask != 0 && i & amask == 0 && i & bmask != 0 {
                let j = (i | amask) & !bmask;
                amps.swap(i, j);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn q(i: usize) -> QubitIndex {
        QubitIndex::new(i)
    }

    fn assert_support(state: &StateVector<f64>, expected: &[(&str, f64)]) {
        for &(ket, re) in expected {
            let a = state.amplitude(&bits(ket)).unwrap();
            assert!(
                (a.re - re).abs() < 1e-12 && a.im.abs() < 1e-12,
                "amplitude of |{ket}⟩ was {a}, expected {re}"
            );
        }
        let support: f64 = expected
            .iter()
            .map(|&(_, re)| re * re)
            .sum();
        assert!((support - 1.0).abs() < 1e-9, "expected kets must carry all probability");
    }

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn x_on_third_qubit_moves_ghz_support_to_001_and_110() {
        let mut s: StateVector<f64> = StateVector::ghz();
        s.apply_x(q(3)).unwrap();
        assert_support(&s, &[("001", H), ("110", H)]);
    }

    #[test]
    fn x_is_an_involution() {
        let mut s: StateVector<f64> = StateVector::ghz();
        let original = s.clone();
        s.apply_x(q(2)).unwrap();
        s.apply_x(q(2)).unwrap();
        assert!(s.l2_distance(&original).unwrap() < 1e-12);
    }

    #[test]
    fn x_flips_a_single_qubit_basis_state() {
        let mut s: StateVector<f64> = StateVector::basis(1, &bits("0")).unwrap();
        s.apply_x(q(1)).unwrap();
        assert_support(&s, &[("1", 1.0)]);
    }

    #[test]
    fn cnot_control2_target1_disentangles_ghz_into_zero_times_bell() {
        let mut s: StateVector<f64> = StateVector::ghz();
        s.apply_cnot(q(2), q(1)).unwrap();
        assert_support(&s, &[("000", H), ("011", H)]);
    }

    #[test]
    fn cnot_control2_target1_on_flipped_ghz_gives_the_odd_bell_pair() {
        let mut s: StateVector<f64> = StateVector::ghz();
        s.apply_x(q(3)).unwrap();
        s.apply_cnot(q(2), q(1)).unwrap();
        assert_support(&s, &[("001", H), ("010", H)]);
    }

    #[test]
    fn cnot_leaves_all_zero_states_alone() {
        let mut s: StateVector<f64> = StateVector::basis(3, &bits("000")).unwrap();
        let original = s.clone();
        s.apply_cnot(q(2), q(1)).unwrap();
        assert_eq!(s, original);
    }

    #[test]
    fn cnot_rejects_equal_control_and_target() {
        let mut s: StateVector<f64> = StateVector::ghz();
        assert!(s.apply_cnot(q(2), q(2)).is_err());
    }

    #[test]
    fn hadamard_definition_on_zero_and_one() {
        let mut s: StateVector<f64> = StateVector::basis(1, &bits("0")).unwrap();
        s.apply_h(q(1)).unwrap();
        assert_support(&s, &[("0", H), ("1", H)]);

        let mut s: StateVector<f64> = StateVector::basis(2, &bits("10")).unwrap();
        s.apply_h(q(1)).unwrap();
        assert_support(&s, &[("00", H), ("10", -H)]);
    }

    #[test]
    fn hadamard_is_an_involution() {
        let mut s: StateVector<f64> = StateVector::ghz();
        let original = s.clone();
        s.apply_h(q(3)).unwrap();
        s.apply_h(q(3)).unwrap();
        assert!(s.l2_distance(&original).unwrap() < 1e-12);
    }

    #[test]
    fn cswap_exchanges_targets_when_control_is_set() {
        let mut s: StateVector<f64> = StateVector::basis(3, &bits("110")).unwrap();
        s.apply_cswap(q(1), q(2), q(3)).unwrap();
        assert_support(&s, &[("101", 1.0)]);
    }

    #[test]
    fn cswap_is_inert_when_control_is_clear() {
        let mut s: StateVector<f64> = StateVector::basis(3, &bits("010")).unwrap();
        let original = s.clone();
        s.apply_cswap(q(1), q(2), q(3)).unwrap();
        assert_eq!(s, original);
    }

    #[test]
    fn cswap_rejects_duplicate_indices() {
        let mut s: StateVector<f64> = StateVector::ghz();
        assert!(s.apply_cswap(q(1), q(1), q(3)).is_err());
        assert!(s.apply_cswap(q(1), q(2), q(2)).is_err());
        assert!(s.apply_cswap(q(3), q(2), q(3)).is_err());
    }

    #[test]
    fn gates_reject_out_of_range_qubits() {
        let mut s: StateVector<f64> = StateVector::ghz();
        assert!(s.apply_x(q(4)).is_err());
        assert!(s.apply_h(q(9)).is_err());
        assert!(s.apply_z(q(4)).is_err());
    }

    #[test]
    fn z_negates_only_set_bit_amplitudes() {
        let mut s: StateVector<f64> = StateVector::ghz();
        s.apply_z(q(3)).unwrap();
        assert_support(&s, &[("000", H), ("111", -H)]);
    }

    fn arb_state(num_qubits: usize) -> impl Strategy<Value = StateVector<f64>> {
        let dim = 1usize << num_qubits;
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim..=dim)
            .prop_filter_map("norm too small", move |pairs| {
                let amps: Vec<Complex64> =
                    pairs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
                let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    return None;
                }
                let amps = amps.into_iter().map(|a| a / norm).collect();
                Some(StateVector::from_amplitudes(num_qubits, amps).unwrap())
            })
    }

    proptest! {
        #[test]
        fn every_gate_preserves_the_norm(s in arb_state(4)) {
            let mut t = s.clone();
            t.apply_x(q(1)).unwrap();
            t.apply_h(q(2)).unwrap();
            t.apply_z(q(4)).unwrap();
            t.apply_cnot(q(3), q(4)).unwrap();
            t.apply_cswap(q(1), q(2), q(4)).unwrap();
            prop_assert!((t.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn double_application_is_the_identity(s in arb_state(4)) {
            for gate in 0..4 {
                let mut t = s.clone();
                for _ in 0..2 {
                    match gate {
                        0 => t.apply_x(q(2)).unwrap(),
                        1 => t.apply_h(q(3)).unwrap(),
                        2 => t.apply_cnot(q(1), q(4)).unwrap(),
                        _ => t.apply_cswap(q(2), q(1), q(3)).unwrap(),
                    }
                }
                prop_assert!(t.l2_distance(&s).unwrap() < 1e-10);
            }
        }
    }
}
