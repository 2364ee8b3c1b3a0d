//! Eigenvalue estimation and state preparation.
//!
//! Phase estimation reads eigenphases of a unitary `U|e_k⟩ = e^{2πiφ_k}|e_k⟩`
//! into an ancilla register. Energies enter through an [`EnergyWindow`],
//! which maps `[E_min, E_max)` affinely onto phases `[0, 1)`.
//!
//! Register layout for every driver here: the system occupies qubits
//! `0..s` and ancillas follow from qubit `s` upward.

mod cets;
mod iterative;
mod pea;
mod prep;
mod unitary;
mod window;

pub use cets::{prepare_cets, CetsSpec};
pub use iterative::{iterative_pea, IterativeResult, DEFAULT_AMBIGUITY_MARGIN};
pub use pea::{phase_estimation, Peak, SpectralResult};
pub use prep::{adiabatic_state_prep, prepare_fock};
pub use unitary::{ControlledUnitary, DenseUnitary, TrotterUnitary, COMPILE_CAP};
pub use window::EnergyWindow;
