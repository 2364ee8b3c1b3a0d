use alloc::vec::Vec;

use super::{brute_force_minimize, QuboProblem};
use crate::error::{domain, Result};
use crate::math::Float;
use crate::schedule::{AnnealSchedule, Schedule, ENDPOINT_DOMINANCE};
use crate::state::{Gate, MeasurementRecord, SeededRng, StateVector, MAX_QUBITS};

/// Result of [`anneal`].
#[derive(Clone, Debug)]
pub struct AnnealOutcome {
    pub state: StateVector,
    /// Born weight on the exact minimizer set.
    pub success_probability: f64,
    /// Minimizers of the problem, as basis states.
    pub minimizers: Vec<usize>,
    /// One computational-basis reading of `state`.
    pub sample: MeasurementRecord,
    pub n_steps: usize,
}

/// Evolves the uniform superposition under `H(τ) = A(τ)·(−Σ X_i) + B(τ)·H_f`.
///
/// Time is cut into `⌈t_run/dt⌉` equal steps. Each step freezes the
/// envelopes at its midpoint and applies `e^{−iA H_i h/2} e^{−iB H_f h}
/// e^{−iA H_i h/2}`; both factors are exact since `H_i` is a sum of
/// commuting single-qubit terms and `H_f` is diagonal. `rng` is used only for
/// the final sample.
pub fn anneal<S: Schedule>(
    p: &QuboProblem,
    schedule: &AnnealSchedule<S>,
    dt: f64,
    rng: &mut SeededRng,
) -> Result<AnnealOutcome> {
    schedule.validate(ENDPOINT_DOMINANCE)?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(domain!("time step must be positive and finite, got {dt}"));
    }
    let n = p.n_spins();
    if n == 0 || n > MAX_QUBITS {
        return Err(domain!(
            "annealing needs between 1 and {MAX_QUBITS} spins, got {n}"
        ));
    }
    let landscape = brute_force_minimize(p)?;
    let energies: Vec<f64> = (0..1usize << n).map(|x| p.energy_of_basis(x)).collect();

    let mut state = StateVector::zero(n)?;
    for q in 0..n {
        state.apply(Gate::H(q))?;
    }
    let steps = Float::ceil(schedule.t_run / dt).max(1.0) as usize;
    let h = schedule.t_run / steps as f64;
    for k in 0..steps {
        let (a, b) = schedule
            .envelopes
            .envelopes((k as f64 + 0.5) / steps as f64);
        // e^{+i a (h/2) X} = Rx(−a h)
        for q in 0..n {
            state.apply(Gate::Rx(q, -a * h))?;
        }
        state.apply_diagonal_phase(|x| -b * h * energies[x]);
        for q in 0..n {
            state.apply(Gate::Rx(q, -a * h))?;
        }
    }
    let probs = state.probabilities();
    let success_probability = landscape.argmin.iter().map(|&x| probs[x]).sum();
    let all: Vec<usize> = (0..n).collect();
    let sample = state.clone().measure(&all, rng)?;
    Ok(AnnealOutcome {
        state,
        success_probability,
        minimizers: landscape.argmin,
        sample,
        n_steps: steps,
    })
}
