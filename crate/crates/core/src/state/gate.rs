use alloc::vec::Vec;

use num_complex::Complex64;

use super::StateVector;
use crate::error::{domain, Result};
use crate::math::*;

/// Elementary one- and two-qubit gates. Angles are in radians.
///
/// Diagonal phases over the whole register are applied with
/// [`StateVector::apply_diagonal_phase`] instead, since they carry a function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    /// `diag(1, e^{iθ})`.
    Phase(usize, f64),
    /// `e^{-iθX/2}`.
    Rx(usize, f64),
    /// `e^{-iθY/2}`.
    Ry(usize, f64),
    /// `e^{-iθZ/2}`.
    Rz(usize, f64),
    Cnot {
        control: usize,
        target: usize,
    },
    /// `diag(1, 1, 1, e^{iθ})`; symmetric in its two qubits.
    CPhase {
        control: usize,
        target: usize,
        theta: f64,
    },
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

impl Gate {
    /// Qubits touched, target first.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q)
            | Gate::Phase(q, _)
            | Gate::Rx(q, _)
            | Gate::Ry(q, _)
            | Gate::Rz(q, _) => alloc::vec![q],
            Gate::Cnot { control, target }
            | Gate::CPhase {
                control, target, ..
            } => {
                alloc::vec![target, control]
            }
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Phase(q, t) => Gate::Phase(q, -t),
            Gate::Rx(q, t) => Gate::Rx(q, -t),
            Gate::Ry(q, t) => Gate::Ry(q, -t),
            Gate::Rz(q, t) => Gate::Rz(q, -t),
            Gate::CPhase {
                control,
                target,
                theta,
            } => Gate::CPhase {
                control,
                target,
                theta: -theta,
            },
            g => g,
        }
    }

    /// The 2×2 matrix of a single-qubit gate.
    fn single_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Some(match *self {
            Gate::H(_) => [[h, h], [h, -h]],
            Gate::X(_) => [[ZERO, ONE], [ONE, ZERO]],
            Gate::Y(_) => [[ZERO, -I], [I, ZERO]],
            Gate::Z(_) => [[ONE, ZERO], [ZERO, -ONE]],
            Gate::Phase(_, t) => [[ONE, ZERO], [ZERO, cis(t)]],
            Gate::Rx(_, t) => {
                let (s, c) = (t / 2.0).sin_cos();
                [
                    [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                    [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
                ]
            }
            Gate::Ry(_, t) => {
                let (s, c) = (t / 2.0).sin_cos();
                [
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ]
            }
            Gate::Rz(_, t) => [[cis(-t / 2.0), ZERO], [ZERO, cis(t / 2.0)]],
            Gate::Cnot { .. } | Gate::CPhase { .. } => return None,
        })
    }

    /// Row-major matrix in the gate's local basis: 2×2 for one-qubit gates,
    /// 4×4 for two-qubit gates with the target as the low bit.
    pub fn matrix(&self) -> Vec<Vec<Complex64>> {
        if let Some(m) = self.single_matrix() {
            return m.iter().map(|r| r.to_vec()).collect();
        }
        let mut m = alloc::vec![alloc::vec![ZERO; 4]; 4];
        match *self {
            Gate::Cnot { .. } => {
                // index = target + 2*control
                m[0][0] = ONE;
                m[1][1] = ONE;
                m[2][3] = ONE;
                m[3][2] = ONE;
            }
            Gate::CPhase { theta, .. } => {
                m[0][0] = ONE;
                m[1][1] = ONE;
                m[2][2] = ONE;
                m[3][3] = cis(theta);
            }
            _ => unreachable!(),
        }
        m
    }
}

impl StateVector {
    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for &q in &qs {
            self.check_qubit(q)?;
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(domain!(
                "gate {gate:?} uses qubit {} as both control and target",
                qs[0]
            ));
        }
        if let Some(m) = gate.single_matrix() {
            self.apply_single(qs[0], m);
            return Ok(());
        }
        match gate {
            Gate::Cnot { control, target } => {
                let (cm, tm) = (1usize << control, 1usize << target);
                let amps = self.amplitudes_mut();
                for x in 0..amps.len() {
                    if x & cm != 0 && x & tm == 0 {
                        amps.swap(x, x | tm);
                    }
                }
            }
            Gate::CPhase {
                control,
                target,
                theta,
            } => {
                let mask = (1usize << control) | (1usize << target);
                let p = cis(theta);
                for (x, a) in self.amplitudes_mut().iter_mut().enumerate() {
                    if x & mask == mask {
                        *a *= p;
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    /// Applies a gate sequence in order.
    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        for g in gates {
            self.apply(*g)?;
        }
        Ok(())
    }
}
