use alloc::vec::Vec;

use num_complex::Complex64;

use super::EnergyWindow;
use crate::error::{domain, Error, Result};
use crate::fermion::{trotter_circuit, TrotterOrder};
use crate::linalg::DenseMatrix;
use crate::math::*;
use crate::pauli::PauliSum;
use crate::state::StateVector;

/// Largest system register a unitary is compiled to a dense matrix for.
pub const COMPILE_CAP: usize = 10;

/// A unitary on a system register whose powers can be applied conditioned on
/// an ancilla qubit.
pub trait ControlledUnitary {
    /// Width of the system register (qubits `0..n`).
    fn n_qubits(&self) -> usize;

    /// `|1⟩⟨1|_control ⊗ U^power + |0⟩⟨0|_control ⊗ I`.
    fn apply_controlled_power(
        &self,
        state: &mut StateVector,
        control: usize,
        power: u64,
    ) -> Result<()>;

    /// Set when some eigenvalue may lie outside the window the unitary was
    /// built for, so its phase could alias onto another.
    fn aliasing_risk(&self) -> bool {
        false
    }
}

/// A unitary given as an explicit matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    n_qubits: usize,
    matrix: DenseMatrix,
}

impl DenseUnitary {
    pub fn new(matrix: DenseMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if !is_power_of_two(dim) {
            return Err(domain!("unitary dimension {dim} is not a power of two"));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_qubits > COMPILE_CAP {
            return Err(Error::Resource {
                what: "dense unitary qubits",
                requested: n_qubits,
                cap: COMPILE_CAP,
            });
        }
        let dev = (&matrix.adjoint() * &matrix).max_deviation(&DenseMatrix::identity(dim));
        if dev > 1e-9 {
            return Err(domain!("matrix is not unitary (deviation {dev:.3e})"));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// `diag(e^{2πiφ_0}, e^{2πiφ_1}, …)` over computational basis states.
    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        let diag: Vec<Complex64> = phases.iter().map(|p| cis(2.0 * PI * p)).collect();
        Self::new(DenseMatrix::from_diagonal(&diag))
    }

    /// `V diag(e^{2πiφ_k}) V†` where column `k` of `vectors` is the
    /// eigenvector with phase `phases[k]`.
    pub fn from_eigenbasis(vectors: &DenseMatrix, phases: &[f64]) -> Result<Self> {
        if vectors.dim() != phases.len() {
            return Err(domain!(
                "{} phases for a basis of dimension {}",
                phases.len(),
                vectors.dim()
            ));
        }
        let diag: Vec<Complex64> = phases.iter().map(|p| cis(2.0 * PI * p)).collect();
        let m = &(vectors * &DenseMatrix::from_diagonal(&diag)) * &vectors.adjoint();
        Self::new(m)
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }
}

impl ControlledUnitary for DenseUnitary {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn apply_controlled_power(
        &self,
        state: &mut StateVector,
        control: usize,
        power: u64,
    ) -> Result<()> {
        state.apply_register_unitary(0..self.n_qubits, &self.matrix.pow(power), Some(control))
    }
}

/// `U = e^{2πi(H − E_min)/W}` realized as a Trotterized evolution of
/// `H − E_min` for time `−2π/W`.
///
/// One Trotter step is compiled into a dense matrix by running the exact
/// per-term rotations on every basis column. `U` is that matrix raised to
/// `n_steps`, and `U^{2^j}` comes from further squaring, so a power of `U`
/// is always the step circuit repeated proportionally many times.
#[derive(Clone, Debug, PartialEq)]
pub struct TrotterUnitary {
    dense: DenseUnitary,
    window: EnergyWindow,
    n_steps: usize,
    order: TrotterOrder,
    aliasing: bool,
}

impl TrotterUnitary {
    pub fn new(
        h: &PauliSum,
        window: &EnergyWindow,
        n_steps: usize,
        order: TrotterOrder,
    ) -> Result<Self> {
        let n = h.n_qubits();
        if n == 0 {
            return Err(domain!("Hamiltonian acts on no qubits"));
        }
        if n > COMPILE_CAP {
            return Err(Error::Resource {
                what: "compiled unitary qubits",
                requested: n,
                cap: COMPILE_CAP,
            });
        }
        let mut shifted = h.clone();
        shifted.add_sum(&PauliSum::scalar(n, -window.e_min()));
        let t = -2.0 * PI / window.width();
        if n_steps == 0 {
            return Err(domain!("at least one Trotter step is required"));
        }
        let step = trotter_circuit(&shifted, t / n_steps as f64, 1, order)?;
        let dim = 1usize << n;
        let mut columns = Vec::with_capacity(dim);
        for b in 0..dim {
            let mut s = StateVector::basis(n, b)?;
            step.apply(&mut s)?;
            columns.push(s.into_amplitudes());
        }
        let u = DenseMatrix::from_columns(&columns).pow(n_steps as u64);
        let (lo, hi) = EnergyWindow::spectral_bound(h);
        Ok(Self {
            dense: DenseUnitary {
                n_qubits: n,
                matrix: u,
            },
            window: *window,
            n_steps,
            order,
            aliasing: !window.covers(lo, hi),
        })
    }

    pub fn window(&self) -> &EnergyWindow {
        &self.window
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn order(&self) -> TrotterOrder {
        self.order
    }

    pub fn matrix(&self) -> &DenseMatrix {
        self.dense.matrix()
    }
}

impl ControlledUnitary for TrotterUnitary {
    fn n_qubits(&self) -> usize {
        self.dense.n_qubits
    }

    fn apply_controlled_power(
        &self,
        state: &mut StateVector,
        control: usize,
        power: u64,
    ) -> Result<()> {
        self.dense.apply_controlled_power(state, control, power)
    }

    fn aliasing_risk(&self) -> bool {
        self.aliasing
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unitary() {
        let m = DenseMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        assert!(DenseUnitary::new(m).is_err());
    }

    #[test]
    fn diagonal_hamiltonian_phases_are_exact() {
        // H = 0.3 Z: eigenvalues 0.3 on |0⟩ and −0.3 on |1⟩.
        let h = PauliSum::from_terms([(0.3, "Z")]).unwrap();
        let w = EnergyWindow::new(-1.0, 1.0).unwrap();
        let u = TrotterUnitary::new(&h, &w, 3, TrotterOrder::First).unwrap();
        let m = u.matrix();
        assert!((m[(0, 0)] - cis(2.0 * PI * w.phase(0.3))).norm() < 1e-12);
        assert!((m[(1, 1)] - cis(2.0 * PI * w.phase(-0.3))).norm() < 1e-12);
        assert!(!u.aliasing_risk());
    }

    #[test]
    fn narrow_window_flags_aliasing() {
        let h = PauliSum::from_terms([(1.0, "Z")]).unwrap();
        let w = EnergyWindow::new(-0.5, 0.5).unwrap();
        assert!(TrotterUnitary::new(&h, &w, 1, TrotterOrder::First)
            .unwrap()
            .aliasing_risk());
    }

    #[test]
    fn controlled_power_acts_only_on_one() {
        let u = DenseUnitary::from_phases(&[0.0, 0.125]).unwrap();
        // system |1⟩, control qubit 1 in |1⟩: phase e^{2πi·0.125·4} = −1
        let mut s = StateVector::basis(2, 0b11).unwrap();
        u.apply_controlled_power(&mut s, 1, 4).unwrap();
        assert!((s.amplitudes()[3] + 1.0).norm() < 1e-12);
        let mut s = StateVector::basis(2, 0b01).unwrap();
        u.apply_controlled_power(&mut s, 1, 4).unwrap();
        assert!((s.amplitudes()[1] - 1.0).norm() < 1e-12);
    }
}
