//! First-quantized dynamics on a position grid.
//!
//! Each Cartesian coordinate of each particle is a register of `n` qubits
//! holding `2^n` grid points. Coordinate `d` of particle `i` sits on qubits
//! `(i·dims + d)·n .. (i·dims + d + 1)·n`. Atomic units throughout.

mod propagate;
mod wavefunction;

pub use propagate::{propagate, split_operator_step, SplitOperator, Splitting, TraceRow};
pub use wavefunction::{
    coulomb_potential, init_gaussian, GaussianPacket, GridSpec, GridWavefunction, ParticleSet,
};

/// Boundary-to-peak amplitude ratio above which a packet is not contained.
pub const CONTAINMENT_RATIO: f64 = 1e-6;
