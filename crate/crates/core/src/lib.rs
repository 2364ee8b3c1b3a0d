//! Statevector emulation of quantum-chemistry simulation algorithms.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation over dense amplitude arrays; file formats, dense
//! eigensolvers and the command line live in the companion `qchem` crate.
//!
//! Qubit 0 is the least significant bit of a basis-state index throughout.
//!
//! Module map:
//! - [`state`]: the register, gates, QFT, measurement and amplitude loading.
//! - [`pauli`] and [`fermion`]: Pauli algebra, Jordan-Wigner encoding of
//!   second-quantized Hamiltonians, Trotterized evolution.
//! - [`spectrum`]: phase estimation, ground-state and thermal-state preparation.
//! - [`grid`]: first-quantized wavepacket dynamics on a position grid.
//! - [`fold`]: QUBO/PUBO problems, lattice folding, adiabatic optimization.
#![no_std]

extern crate alloc;

pub mod error;
pub mod fermion;
pub mod fold;
pub mod grid;
pub mod linalg;
mod math;
pub mod pauli;
pub mod schedule;
pub mod spectrum;
pub mod state;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use num_complex::Complex64;
pub use pauli::{Pauli, PauliString, PauliSum};
pub use state::{Gate, MeasurementRecord, SeededRng, StateVector};
