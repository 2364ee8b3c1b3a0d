use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::math::*;
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::{Gate, StateVector};

/// Imaginary coefficient parts above this make a sum non-Hermitian.
const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrotterOrder {
    /// `Π_k e^{-i c_k P_k δt}` per step.
    First,
    /// Symmetric: half steps forward, then half steps in reverse order.
    Second,
}

impl TrotterOrder {
    pub fn from_int(order: u32) -> Result<Self> {
        match order {
            1 => Ok(Self::First),
            2 => Ok(Self::Second),
            o => Err(domain!("Trotter order must be 1 or 2, got {o}")),
        }
    }
}

/// Product-formula approximation of `e^{-iHt}`.
///
/// Terms run in lexicographic letter order. Every factor `e^{-iθP}` is applied
/// exactly, so all error is splitting error. Identity terms contribute their
/// global phase, which matters once the evolution is controlled.
#[derive(Clone, Debug, PartialEq)]
pub struct TrotterPlan {
    n_qubits: usize,
    terms: Vec<(PauliString, f64)>,
    total_time: f64,
    n_steps: usize,
    order: TrotterOrder,
}

/// Plans `n_steps` steps of `e^{-iHt}`.
pub fn trotter_circuit(
    h: &PauliSum,
    t: f64,
    n_steps: usize,
    order: TrotterOrder,
) -> Result<TrotterPlan> {
    if !t.is_finite() {
        return Err(domain!("evolution time must be finite"));
    }
    if n_steps == 0 {
        return Err(domain!("at least one Trotter step is required"));
    }
    Ok(TrotterPlan {
        n_qubits: h.n_qubits(),
        terms: h.real_terms(HERMITIAN_TOL)?,
        total_time: t,
        n_steps,
        order,
    })
}

impl TrotterPlan {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(PauliString, f64)] {
        &self.terms
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn order(&self) -> TrotterOrder {
        self.order
    }

    pub fn time_step(&self) -> f64 {
        self.total_time / self.n_steps as f64
    }

    /// Evolves `state` on qubits `0..n_qubits` of its register.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() < self.n_qubits {
            return Err(domain!(
                "plan on {} qubits applied to a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            ));
        }
        let dt = self.time_step();
        for _ in 0..self.n_steps {
            match self.order {
                TrotterOrder::First => {
                    for (p, c) in &self.terms {
                        apply_pauli_rotation(state, p, c * dt);
                    }
                }
                TrotterOrder::Second => {
                    for (p, c) in &self.terms {
                        apply_pauli_rotation(state, p, 0.5 * c * dt);
                    }
                    for (p, c) in self.terms.iter().rev() {
                        apply_pauli_rotation(state, p, 0.5 * c * dt);
                    }
                }
            }
        }
        Ok(())
    }

    /// The plan as an explicit gate list. Identity terms are omitted, so the
    /// circuit matches [`TrotterPlan::apply`] up to a global phase.
    pub fn circuit(&self) -> Vec<Gate> {
        let dt = self.time_step();
        let mut gates = Vec::new();
        for _ in 0..self.n_steps {
            match self.order {
                TrotterOrder::First => {
                    for (p, c) in &self.terms {
                        gates.extend(pauli_rotation_circuit(p, c * dt));
                    }
                }
                TrotterOrder::Second => {
                    for (p, c) in self.terms.iter().chain(self.terms.iter().rev()) {
                        gates.extend(pauli_rotation_circuit(p, 0.5 * c * dt));
                    }
                }
            }
        }
        gates
    }
}

/// `|ψ⟩ ← e^{-iθP}|ψ⟩ = cos θ |ψ⟩ − i sin θ P|ψ⟩`, acting on the low
/// `P.n_qubits()` qubits of the register.
///
/// This is the fused form of [`pauli_rotation_circuit`].
pub fn apply_pauli_rotation(state: &mut StateVector, p: &PauliString, theta: f64) {
    if p.is_identity() {
        state.apply_global_phase(-theta);
        return;
    }
    let (s, c) = theta.sin_cos();
    let x = p.x_mask() as usize;
    let amps = state.amplitudes_mut();
    if x == 0 {
        let plus = cis(-theta);
        let minus = cis(theta);
        for (b, a) in amps.iter_mut().enumerate() {
            let (phase, _) = p.act_on_basis(b & low_mask(p));
            *a *= if phase.re > 0.0 { plus } else { minus };
        }
        return;
    }
    let mis = Complex64::new(0.0, -s);
    let mask = low_mask(p);
    let top = 1usize << (usize::BITS - 1 - x.leading_zeros());
    for b in 0..amps.len() {
        if b & top != 0 {
            continue;
        }
        let b2 = b ^ x;
        let (phase_b, _) = p.act_on_basis(b & mask);
        let (phase_b2, _) = p.act_on_basis(b2 & mask);
        let (a, a2) = (amps[b], amps[b2]);
        amps[b] = a * c + mis * phase_b2 * a2;
        amps[b2] = a2 * c + mis * phase_b * a;
    }
}

#[inline]
fn low_mask(p: &PauliString) -> usize {
    if p.n_qubits() >= usize::BITS as usize {
        usize::MAX
    } else {
        (1usize << p.n_qubits()) - 1
    }
}

/// Gate sequence for `e^{-iθP}` (up to global phase for `P = I`): rotate
/// each `X` with `H` and each `Y` with `S†` then `H` into `Z`, gather the
/// parity onto the last support qubit with a CNOT ladder, apply `Rz(2θ)`,
/// and undo.
pub fn pauli_rotation_circuit(p: &PauliString, theta: f64) -> Vec<Gate> {
    let support = p.support();
    let Some(&last) = support.last() else {
        return Vec::new();
    };
    let mut pre = Vec::new();
    for &q in &support {
        match p.letter(q) {
            Pauli::X => pre.push(Gate::H(q)),
            Pauli::Y => {
                pre.push(Gate::Phase(q, -PI / 2.0));
                pre.push(Gate::H(q));
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        pre.push(Gate::Cnot {
            control: w[0],
            target: w[1],
        });
    }
    let mut gates = pre.clone();
    gates.push(Gate::Rz(last, 2.0 * theta));
    gates.extend(pre.iter().rev().map(|g| g.inverse()));
    gates
}
