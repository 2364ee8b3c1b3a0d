//! Binary optimization and the lattice-folding instance.
//!
//! Spin problems use `E(s) = −Σ h_i s_i + Σ_{i<j} J_ij s_i s_j` with
//! `s_i = ±1`. Binary problems use `q_i ∈ {0, 1}`, related by
//! `q = (1 − s)/2`. On a register, qubit `i` in `|0⟩` means `s_i = +1`, so
//! the basis bit equals `q_i`.

mod anneal;
mod lattice;
mod pubo;
mod qubo;
mod search;

pub use anneal::{anneal, AnnealOutcome};
pub use lattice::{
    decode_directions, decode_fold, encode_fold, fold_energy, folding_pubo, walk_energy, Direction,
    HpModel, Residue, WalkEnergy, CHAPERONE_CELLS, CHAPERONE_PENALTY, OVERLAP_PENALTY,
};
pub use pubo::{reduce_to_qubo, PuboProblem, Reduction, MAX_REDUCIBLE_DEGREE};
pub use qubo::{build_final_hamiltonian, qubo_energy, QuboProblem};
pub use search::{brute_force_minimize, BinaryObjective, Landscape, ARGMIN_TOL, ENUMERATION_CAP};
