use alloc::vec::Vec;

use super::{ControlledUnitary, EnergyWindow};
use crate::error::{domain, Result};
use crate::math::*;
use crate::state::{Gate, SeededRng, StateVector};

/// A bit whose empirical frequency of `1` lies within this distance of 0.5
/// is reported as ambiguous.
pub const DEFAULT_AMBIGUITY_MARGIN: f64 = 0.1;

/// Output of [`iterative_pea`].
#[derive(Clone, Debug, PartialEq)]
pub struct IterativeResult {
    /// Phase bits `b_1 … b_n` of `φ = 0.b_1 b_2 … b_n`, most significant first.
    pub bits: Vec<u8>,
    pub phase: f64,
    pub energy: f64,
    /// Born probability of reading `1` in each round, indexed like `bits`.
    pub p_one: Vec<f64>,
    /// Empirical fraction of `1` readings, indexed like `bits`.
    pub frequency: Vec<f64>,
    /// Indices into `bits` whose majority vote was close to a tie.
    pub ambiguous: Vec<usize>,
}

impl IterativeResult {
    pub fn bit_string(&self) -> alloc::string::String {
        self.bits
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Kitaev-style phase estimation with one reusable ancilla.
///
/// Bits are extracted least significant first. Round `k` (from `n_bits` down
/// to 1) prepares the ancilla in `|+⟩`, applies controlled `U^{2^{k−1}}`,
/// removes the already known tail `0.0 b_{k+1} … b_n` with a phase rotation,
/// and reads the ancilla in the `X` basis. Each round is repeated
/// `shots_per_bit` times on fresh copies of `input` and decided by majority.
pub fn iterative_pea<U: ControlledUnitary + ?Sized>(
    u: &U,
    input: &StateVector,
    n_bits: usize,
    shots_per_bit: usize,
    window: &EnergyWindow,
    rng: &mut SeededRng,
) -> Result<IterativeResult> {
    let s = u.n_qubits();
    if input.n_qubits() != s {
        return Err(domain!(
            "input has {} qubits, unitary acts on {s}",
            input.n_qubits()
        ));
    }
    if n_bits == 0 || n_bits > 52 {
        return Err(domain!("bit count must lie in 1..=52, got {n_bits}"));
    }
    if shots_per_bit == 0 {
        return Err(domain!("at least one shot per bit is required"));
    }
    let start = input.tensor(&StateVector::zero(1)?)?;
    let mut bits = alloc::vec![0u8; n_bits];
    let mut p_one = alloc::vec![0.0; n_bits];
    let mut frequency = alloc::vec![0.0; n_bits];
    let mut ambiguous = Vec::new();
    for k in (1..=n_bits).rev() {
        // 0.0 b_{k+1} b_{k+2} … b_n
        let tail: f64 = (k + 1..=n_bits)
            .map(|j| bits[j - 1] as f64 * 0.5f64.powi((j - k + 1) as i32))
            .sum();
        let mut state = start.clone();
        state.apply(Gate::H(s))?;
        u.apply_controlled_power(&mut state, s, 1u64 << (k - 1))?;
        state.apply(Gate::Phase(s, -2.0 * PI * tail))?;
        state.apply(Gate::H(s))?;
        let p = state.marginal(&[s])?[1].clamp(0.0, 1.0);
        let ones = (0..shots_per_bit).filter(|_| rng.uniform() < p).count();
        let freq = ones as f64 / shots_per_bit as f64;
        let bit = if 2 * ones == shots_per_bit {
            p > 0.5
        } else {
            2 * ones > shots_per_bit
        };
        bits[k - 1] = bit as u8;
        p_one[k - 1] = p;
        frequency[k - 1] = freq;
        if (freq - 0.5).abs() < DEFAULT_AMBIGUITY_MARGIN {
            ambiguous.push(k - 1);
        }
    }
    ambiguous.reverse();
    let phase: f64 = bits
        .iter()
        .enumerate()
        .map(|(i, &b)| b as f64 * 0.5f64.powi(i as i32 + 1))
        .sum();
    Ok(IterativeResult {
        energy: window.energy(phase),
        bits,
        phase,
        p_one,
        frequency,
        ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::DenseUnitary;

    fn unit() -> EnergyWindow {
        EnergyWindow::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn quarter_phase_has_trailing_zeros() {
        let u = DenseUnitary::from_phases(&[0.0, 0.25]).unwrap();
        let input = StateVector::basis(1, 1).unwrap();
        let r = iterative_pea(&u, &input, 20, 16, &unit(), &mut SeededRng::new(1)).unwrap();
        assert_eq!(r.phase, 0.25);
        assert_eq!(r.bit_string(), "01000000000000000000");
        assert!(r.ambiguous.is_empty());
    }

    #[test]
    fn third_is_expanded_correctly() {
        let u = DenseUnitary::from_phases(&[1.0 / 3.0, 0.0]).unwrap();
        let input = StateVector::zero(1).unwrap();
        let r = iterative_pea(&u, &input, 20, 101, &unit(), &mut SeededRng::new(5)).unwrap();
        assert_eq!(r.bit_string(), "01010101010101010101");
        assert!((r.phase - 1.0 / 3.0).abs() < 0.5f64.powi(20));
        // the first round sees phase 2/3 and reads 1 with probability 3/4
        assert!((r.p_one[19] - 0.75).abs() < 1e-9);
    }

    #[test]
    fn zero_bits_rejected() {
        let u = DenseUnitary::from_phases(&[0.0, 0.0]).unwrap();
        let input = StateVector::zero(1).unwrap();
        assert!(iterative_pea(&u, &input, 0, 1, &unit(), &mut SeededRng::new(0)).is_err());
    }
}
