use alloc::vec::Vec;

use super::StateVector;
use crate::error::{domain, Result};
use crate::math::*;

/// Prepares `Σ_x √(p_x) e^{iθ_x} |x⟩ / ‖·‖` from a non-negative mass
/// function `p` over `2^n` points and optional phases `θ`.
///
/// The state is built one qubit at a time from the most significant qubit
/// down: at each level a rotation `Ry(α)` on the next qubit, conditioned on
/// the already-prepared higher qubits, splits each prefix's mass between its
/// two halves with `cos²(α/2) = left / (left + right)`. Phases are written
/// last as a diagonal phase.
pub fn load_amplitudes(mass: &[f64], phase: Option<&[f64]>) -> Result<StateVector> {
    if !is_power_of_two(mass.len()) {
        return Err(domain!(
            "target has {} points, not a power of two",
            mass.len()
        ));
    }
    if let Some(ph) = phase {
        if ph.len() != mass.len() {
            return Err(domain!(
                "phase table length {} differs from target length {}",
                ph.len(),
                mass.len()
            ));
        }
    }
    if let Some(bad) = mass.iter().position(|m| !m.is_finite() || *m < 0.0) {
        return Err(domain!("target mass at {bad} is negative or non-finite"));
    }
    let n = mass.len().trailing_zeros() as usize;

    // sums[l][p]: total mass of the block whose top l bits equal p
    let mut sums: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    sums.push(mass.to_vec());
    for _ in 0..n {
        let prev = sums.last().unwrap();
        let next = prev.chunks_exact(2).map(|c| c[0] + c[1]).collect();
        sums.push(next);
    }
    sums.reverse();
    if !(sums[0][0] > 0.0) || !sums[0][0].is_finite() {
        return Err(domain!("target mass is identically zero"));
    }

    let mut state = StateVector::zero(n)?;
    for level in 0..n {
        let target = n - 1 - level;
        let children = &sums[level + 1];
        let angles: Vec<(f64, f64)> = (0..1usize << level)
            .map(|p| {
                let left = children[2 * p];
                let right = children[2 * p + 1];
                let alpha = 2.0 * right.sqrt().atan2(left.sqrt());
                (alpha / 2.0).sin_cos()
            })
            .collect();
        uniformly_controlled_ry(&mut state, target, &angles);
    }
    if let Some(ph) = phase {
        state.apply_diagonal_phase(|x| ph[x]);
    }
    Ok(state)
}

/// `Ry` on `target` whose angle is selected by the value of all higher qubits.
/// `sin_cos[p]` holds `(sin(α_p/2), cos(α_p/2))`.
fn uniformly_controlled_ry(state: &mut StateVector, target: usize, sin_cos: &[(f64, f64)]) {
    let stride = 1usize << target;
    let amps = state.amplitudes_mut();
    for block in (0..amps.len()).step_by(stride << 1) {
        let (s, c) = sin_cos[block >> (target + 1)];
        for i in block..block + stride {
            let a0 = amps[i];
            let a1 = amps[i + stride];
            amps[i] = a0 * c - a1 * s;
            amps[i + stride] = a0 * s + a1 * c;
        }
    }
}
