use crate::error::{domain, Result};
use crate::fermion::{trotter_circuit, TrotterOrder};
use crate::math::Float;
use crate::pauli::PauliSum;
use crate::schedule::{AnnealSchedule, Schedule};
use crate::state::StateVector;

/// Computational basis state with qubit `k` set when character `k` of
/// `occupations` is `1` (occupied spin-orbital).
pub fn prepare_fock(occupations: &str) -> Result<StateVector> {
    let mut index = 0usize;
    let mut n = 0;
    for (k, c) in occupations.chars().enumerate() {
        match c {
            '0' => {}
            '1' => index |= 1 << k,
            other => return Err(domain!("occupation string has {other:?} at position {k}")),
        }
        n = k + 1;
    }
    StateVector::basis(n, index)
}

/// Evolves `initial` under `H(τ) = A(τ)·h_start + B(τ)·h_end` for the
/// schedule's running time.
///
/// The run is cut into `⌈t_run/dt⌉` equal steps. Each step freezes the
/// envelopes at its midpoint and applies one symmetric second-order Trotter
/// step of the frozen Hamiltonian.
pub fn adiabatic_state_prep<S: Schedule>(
    h_start: &PauliSum,
    h_end: &PauliSum,
    schedule: &AnnealSchedule<S>,
    dt: f64,
    initial: &StateVector,
) -> Result<StateVector> {
    schedule.validate(1.0)?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(domain!("time step must be positive and finite, got {dt}"));
    }
    let n = h_start.n_qubits();
    if h_end.n_qubits() != n || initial.n_qubits() != n {
        return Err(domain!(
            "Hamiltonians and initial state must share one register width"
        ));
    }
    let steps = Float::ceil(schedule.t_run / dt).max(1.0) as usize;
    let h = schedule.t_run / steps as f64;
    let mut state = initial.clone();
    for k in 0..steps {
        let tau = (k as f64 + 0.5) / steps as f64;
        let (a, b) = schedule.envelopes.envelopes(tau);
        let mut frozen = h_start.scaled(num_complex::Complex64::new(a, 0.0));
        frozen.add_sum(&h_end.scaled(num_complex::Complex64::new(b, 0.0)));
        trotter_circuit(&frozen, h, 1, TrotterOrder::Second)?.apply(&mut state)?;
    }
    Ok(state)
}
