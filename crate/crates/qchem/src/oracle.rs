//! Dense Hermitian diagonalization used as the exact reference.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qchem_core::{DenseMatrix, PauliSum, Result, StateVector};

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl Eigensystem {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    pub fn state(&self, k: usize) -> Result<StateVector> {
        StateVector::from_amplitudes(self.vector(k))
    }

    /// `|⟨e_k|ψ⟩|²` for every eigenvector.
    pub fn overlaps(&self, psi: &StateVector) -> Vec<f64> {
        let amps = psi.amplitudes();
        (0..self.values.len())
            .map(|k| {
                let v = self.vector(k);
                v.iter()
                    .zip(amps)
                    .map(|(e, a)| e.conj() * a)
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .collect()
    }

    /// `V f(Λ) V†`.
    pub fn function(&self, f: impl Fn(f64) -> Complex64) -> DenseMatrix {
        let diag: Vec<Complex64> = self.values.iter().map(|&e| f(e)).collect();
        &(&self.vectors * &DenseMatrix::from_diagonal(&diag)) * &self.vectors.adjoint()
    }
}

/// Diagonalizes a Hermitian matrix.
pub fn eigh(m: &DenseMatrix) -> Eigensystem {
    let d = m.dim();
    let a = DMatrix::from_fn(d, d, |i, j| {
        let (x, y) = (m[(i, j)], m[(j, i)].conj());
        nalgebra::Complex::new((x.re + y.re) / 2.0, (x.im + y.im) / 2.0)
    });
    let eig = a.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let columns: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&k| {
            (0..d)
                .map(|i| Complex64::new(eig.eigenvectors[(i, k)].re, eig.eigenvectors[(i, k)].im))
                .collect()
        })
        .collect();
    Eigensystem {
        values,
        vectors: DenseMatrix::from_columns(&columns),
    }
}

/// Spectrum of a Pauli sum, within the dense-oracle cap.
pub fn diagonalize(h: &PauliSum) -> Result<Eigensystem> {
    Ok(eigh(&h.dense_matrix()?))
}

/// `e^{−iHt}` from the eigendecomposition.
pub fn evolution_operator(h: &PauliSum, t: f64) -> Result<DenseMatrix> {
    Ok(diagonalize(h)?.function(|e| Complex64::from_polar(1.0, -e * t)))
}

/// Lowest eigenvalue and a corresponding eigenvector.
pub fn ground_state(h: &PauliSum) -> Result<(f64, StateVector)> {
    let es = diagonalize(h)?;
    Ok((es.values[0], es.state(0)?))
}

/// Total weight of `psi` on the eigenspace of the lowest eigenvalue
/// (eigenvalues within `tol` count as degenerate).
pub fn ground_overlap(es: &Eigensystem, psi: &StateVector, tol: f64) -> f64 {
    let e0 = es.values[0];
    es.overlaps(psi)
        .iter()
        .zip(&es.values)
        .filter(|(_, &e)| e - e0 <= tol)
        .map(|(w, _)| w)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_like_spectrum() {
        let h = PauliSum::from_terms([(0.5, "XX"), (0.5, "YY")]).unwrap();
        let es = diagonalize(&h).unwrap();
        let expect = [-1.0, 0.0, 0.0, 1.0];
        for (a, b) in es.values.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        let m = h.dense_matrix().unwrap();
        let back = es.function(|e| Complex64::new(e, 0.0));
        assert!(back.max_deviation(&m) < 1e-12);
    }

    #[test]
    fn evolution_is_unitary() {
        let h = PauliSum::from_terms([(0.3, "XZ"), (-0.7, "ZI"), (0.2, "YY")]).unwrap();
        let u = evolution_operator(&h, 1.3).unwrap();
        let id = &u.adjoint() * &u;
        assert!(id.max_deviation(&DenseMatrix::identity(4)) < 1e-12);
    }
}
