use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::linalg::DenseMatrix;
use crate::math::*;
use crate::state::{load_amplitudes, Gate, StateVector};

/// Spectrum and inverse temperature of a coherent thermal encoding.
///
/// `beta = f64::INFINITY` selects the zero-temperature limit, spread
/// uniformly over the degenerate ground level.
#[derive(Clone, Debug, PartialEq)]
pub struct CetsSpec {
    pub energies: Vec<f64>,
    pub beta: f64,
}

/// Energies closer than this count as one degenerate level at `β = ∞`.
const DEGENERACY_TOL: f64 = 1e-12;

impl CetsSpec {
    pub fn new(energies: Vec<f64>, beta: f64) -> Result<Self> {
        if energies.is_empty() {
            return Err(domain!("thermal encoding needs at least one level"));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(domain!("energies must be finite"));
        }
        if beta.is_nan() || beta < 0.0 {
            return Err(domain!(
                "inverse temperature must be non-negative, got {beta}"
            ));
        }
        Ok(Self { energies, beta })
    }

    fn ground(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Gibbs weights `e^{−βE_k}/Z`, evaluated with energies measured from
    /// the ground level so nothing overflows.
    pub fn weights(&self) -> Vec<f64> {
        let e0 = self.ground();
        let raw: Vec<f64> = if self.beta.is_infinite() {
            self.energies
                .iter()
                .map(|&e| if e - e0 <= DEGENERACY_TOL { 1.0 } else { 0.0 })
                .collect()
        } else {
            self.energies
                .iter()
                .map(|&e| (-self.beta * (e - e0)).exp())
                .collect()
        };
        let z = stable_sum(raw.iter().copied());
        raw.into_iter().map(|w| w / z).collect()
    }

    /// `ln Z` with `Z = Σ_k e^{−βE_k}`; infinite `β` gives `−∞` or `+∞`
    /// depending on the sign of the ground energy, and NaN when it is zero.
    pub fn log_partition_function(&self) -> f64 {
        let e0 = self.ground();
        if self.beta.is_infinite() {
            let g = self
                .energies
                .iter()
                .filter(|&&e| e - e0 <= DEGENERACY_TOL)
                .count() as f64;
            return if e0 == 0.0 { g.ln() } else { -self.beta * e0 };
        }
        let shifted = stable_sum(self.energies.iter().map(|&e| (-self.beta * (e - e0)).exp()));
        -self.beta * e0 + shifted.ln()
    }

    /// Qubits per register.
    pub fn register_width(&self) -> usize {
        let n = self.energies.len();
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `Σ_k √(e^{−βE_k}/Z) |e_k⟩|e_k⟩` over two registers of equal width.
///
/// The weights are loaded on the low register, copied into the high
/// register with CNOTs, and both registers are rotated by the eigenvector
/// matrix (column `k` is `|e_k⟩`). With `eigenvectors = None` the
/// eigenstates are the computational basis states. Spectra shorter than a
/// power of two are padded with empty levels.
pub fn prepare_cets(spec: &CetsSpec, eigenvectors: Option<&DenseMatrix>) -> Result<StateVector> {
    let n = spec.register_width().max(1);
    let dim = 1usize << n;
    let mut mass = spec.weights();
    mass.resize(dim, 0.0);
    if let Some(v) = eigenvectors {
        if v.dim() != dim {
            return Err(domain!(
                "eigenvector matrix of dimension {} for {dim} levels",
                v.dim()
            ));
        }
    }
    let low = load_amplitudes(&mass, None)?;
    let mut state = low.tensor(&StateVector::zero(n)?)?;
    for q in 0..n {
        state.apply(Gate::Cnot {
            control: q,
            target: q + n,
        })?;
    }
    if let Some(v) = eigenvectors {
        state.apply_register_unitary(0..n, v, None)?;
        state.apply_register_unitary(n..2 * n, v, None)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reduced_diagonal(state: &StateVector, n: usize) -> Vec<f64> {
        let rho = state.reduced_density_matrix(n).unwrap();
        (0..1 << n).map(|i| rho[(i, i)].re).collect()
    }

    #[test]
    fn three_levels_at_unit_beta() {
        let spec = CetsSpec::new(alloc::vec![0.0, 1.0, 2.0], 1.0).unwrap();
        let s = prepare_cets(&spec, None).unwrap();
        let z: f64 = [0.0f64, -1.0, -2.0].iter().map(|e| e.exp()).sum();
        let d = reduced_diagonal(&s, 2);
        for (k, e) in [0.0f64, -1.0, -2.0].iter().enumerate() {
            assert!((d[k] - e.exp() / z).abs() < 1e-12);
        }
        assert!(d[3].abs() < 1e-15);
        assert!((spec.log_partition_function() - z.ln()).abs() < 1e-12);
    }

    #[test]
    fn infinite_temperature_is_uniform() {
        let spec = CetsSpec::new(alloc::vec![0.3, -1.0, 2.0, 0.0], 0.0).unwrap();
        let s = prepare_cets(&spec, None).unwrap();
        for (x, a) in s.amplitudes().iter().enumerate() {
            let paired = x & 3 == x >> 2;
            let expect = if paired { 0.5 } else { 0.0 };
            assert!((a.re - expect).abs() < 1e-12 && a.im.abs() < 1e-12);
        }
    }

    #[test]
    fn zero_temperature_selects_ground() {
        let spec = CetsSpec::new(alloc::vec![0.3, -1.0, 2.0, 0.0], f64::INFINITY).unwrap();
        let s = prepare_cets(&spec, None).unwrap();
        assert!((s.amplitudes()[0b0101].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_beta_rejected() {
        assert!(CetsSpec::new(alloc::vec![0.0], -0.1).is_err());
    }
}
