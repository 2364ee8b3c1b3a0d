use alloc::vec::Vec;
use core::ops::Range;

use super::{Gate, StateVector};
use crate::error::Result;
use crate::math::PI;

/// Gate list for the QFT on `qubits` (`qubits.start` is the least
/// significant bit of the sub-register value).
///
/// H + controlled-phase ladder followed by a qubit reversal built from
/// CNOT triples: `m(m+1)/2 + 3⌊m/2⌋` gates for an `m`-qubit register.
pub fn qft_circuit(qubits: Range<usize>, inverse: bool) -> Vec<Gate> {
    let lo = qubits.start;
    let m = qubits.end.saturating_sub(lo);
    let mut gates = Vec::with_capacity(m * (m + 1) / 2 + 3 * (m / 2));
    for j in (0..m).rev() {
        gates.push(Gate::H(lo + j));
        for k in (0..j).rev() {
            let theta = PI / (1u64 << (j - k)) as f64;
            gates.push(Gate::CPhase {
                control: lo + k,
                target: lo + j,
                theta,
            });
        }
    }
    for i in 0..m / 2 {
        let (a, b) = (lo + i, lo + m - 1 - i);
        gates.push(Gate::Cnot {
            control: a,
            target: b,
        });
        gates.push(Gate::Cnot {
            control: b,
            target: a,
        });
        gates.push(Gate::Cnot {
            control: a,
            target: b,
        });
    }
    if inverse {
        gates.reverse();
        gates.iter_mut().for_each(|g| *g = g.inverse());
    }
    gates
}

impl StateVector {
    /// Quantum Fourier transform on a contiguous sub-register:
    /// `|x⟩ ↦ N^{-1/2} Σ_k e^{2πi kx/N} |k⟩`, or its inverse.
    pub fn apply_qft(&mut self, qubits: Range<usize>, inverse: bool) -> Result<()> {
        self.check_range(&qubits)?;
        for g in qft_circuit(qubits, inverse) {
            self.apply(g)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cis, TAU};
    use alloc::vec;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn dft_oracle(amps: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = amps.len();
        let norm = 1.0 / (n as f64).sqrt();
        (0..n)
            .map(|k| {
                amps.iter()
                    .enumerate()
                    .map(|(x, a)| a * cis(sign * TAU * ((k * x) % n) as f64 / n as f64))
                    .sum::<Complex64>()
                    * norm
            })
            .collect()
    }

    fn pseudo_random_state(n: usize, salt: u64) -> StateVector {
        let mut x = salt.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        let mut next = || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let amps = (0..1 << n)
            .map(|_| Complex64::new(next(), next()))
            .collect();
        StateVector::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn single_qubit_qft_is_hadamard() {
        let s0 = pseudo_random_state(1, 3);
        let mut a = s0.clone();
        a.apply_qft(0..1, false).unwrap();
        let mut b = s0;
        b.apply(Gate::H(0)).unwrap();
        assert!(a.max_deviation(&b) < 1e-15);
    }

    #[test]
    fn qft_of_zero_is_uniform() {
        let mut s = StateVector::zero(5).unwrap();
        s.apply_qft(0..5, false).unwrap();
        let u = 1.0 / 32f64.sqrt();
        for a in s.amplitudes() {
            assert!((a - Complex64::new(u, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn qft_matches_dense_dft_up_to_six_qubits() {
        for n in 1..=6 {
            let s0 = pseudo_random_state(n, n as u64);
            for (inverse, sign) in [(false, 1.0), (true, -1.0)] {
                let mut s = s0.clone();
                s.apply_qft(0..n, inverse).unwrap();
                let expect = dft_oracle(s0.amplitudes(), sign);
                let dev = s
                    .amplitudes()
                    .iter()
                    .zip(&expect)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(dev < 1e-10, "n={n} inverse={inverse} dev={dev}");
            }
        }
    }

    #[test]
    fn qft_on_sub_register_acts_blockwise() {
        // qubits 1..4 of a 5-qubit register; qubits 0 and 4 are spectators.
        let s0 = pseudo_random_state(5, 11);
        let mut s = s0.clone();
        s.apply_qft(1..4, false).unwrap();
        for spect in [0usize, 1, 16, 17] {
            let block: Vec<_> = (0..8).map(|y| s0.amplitudes()[spect | (y << 1)]).collect();
            let expect = dft_oracle(&block, 1.0);
            for y in 0..8 {
                assert!((s.amplitudes()[spect | (y << 1)] - expect[y]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_range_rejected() {
        let mut s = StateVector::zero(2).unwrap();
        assert!(s.apply_qft(1..1, false).is_err());
        assert!(s.apply_qft(1..3, false).is_err());
    }

    #[test]
    fn gate_count_is_quadratic() {
        assert_eq!(qft_circuit(0..8, false).len(), 36 + 12);
        assert_eq!(qft_circuit(0..1, false), vec![Gate::H(0)]);
    }

    proptest! {
        #[test]
        fn qft_round_trip(salt in 0u64..10_000, n in 1usize..7) {
            let s0 = pseudo_random_state(n, salt);
            let mut s = s0.clone();
            s.apply_qft(0..n, false).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
            s.apply_qft(0..n, true).unwrap();
            prop_assert!(s.max_deviation(&s0) < 1e-10);
        }
    }
}
