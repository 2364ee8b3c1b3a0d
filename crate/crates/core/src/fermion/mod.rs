//! Second-quantized electronic Hamiltonians and their qubit encoding.
//!
//! Mode `p` (0-based) lives on qubit `p`. Occupied is `|1⟩`, and the
//! creation operator maps to `σ⁻ = |1⟩⟨0| = (X − iY)/2` followed by a string
//! of `Z` on every higher qubit:
//!
//! ```text
//! a†_p ↦ I^{⊗p} ⊗ σ⁻ ⊗ Z^{⊗(M−p−1)}
//! ```

mod trotter;

pub use trotter::{
    apply_pauli_rotation, pauli_rotation_circuit, trotter_circuit, TrotterOrder, TrotterPlan,
};

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Tolerance for the integral symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// A single creation or annihilation operator on a 0-based mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FermionOp {
    pub mode: usize,
    pub ladder: Ladder,
}

impl FermionOp {
    pub fn create(mode: usize) -> Self {
        Self {
            mode,
            ladder: Ladder::Create,
        }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self {
            mode,
            ladder: Ladder::Annihilate,
        }
    }
}

/// Jordan-Wigner image of one ladder operator on `n_modes` modes.
pub fn jordan_wigner(op: FermionOp, n_modes: usize) -> Result<PauliSum> {
    if op.mode >= n_modes {
        return Err(domain!("mode {} out of range for {n_modes} modes", op.mode));
    }
    if n_modes > 64 {
        return Err(domain!("at most 64 modes are supported"));
    }
    let mut string = PauliString::identity(n_modes);
    for q in op.mode + 1..n_modes {
        string = string.with(q, Pauli::Z);
    }
    let x = string.with(op.mode, Pauli::X);
    let y = string.with(op.mode, Pauli::Y);
    // a† ↦ (X − iY)/2, a ↦ (X + iY)/2
    let y_coeff = match op.ladder {
        Ladder::Create => Complex64::new(0.0, -0.5),
        Ladder::Annihilate => Complex64::new(0.0, 0.5),
    };
    let mut out = PauliSum::zero(n_modes);
    out.add_term(x, Complex64::new(0.5, 0.0));
    out.add_term(y, y_coeff);
    Ok(out)
}

/// `H = Σ h_pq a†_p a_q + ½ Σ h_pqrs a†_p a†_q a_r a_s + E₀`, in Hartree.
///
/// `h_pqrs` multiplies the operator string exactly in the order written,
/// `a†_p a†_q a_r a_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondQuantizedHamiltonian {
    n_modes: usize,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
    constant: f64,
}

impl SecondQuantizedHamiltonian {
    /// All-zero Hamiltonian on `n_modes` spin-orbitals.
    pub fn new(n_modes: usize) -> Self {
        Self {
            n_modes,
            one_body: vec![0.0; n_modes * n_modes],
            two_body: vec![0.0; n_modes.pow(4)],
            constant: 0.0,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn set_constant(&mut self, c: f64) {
        self.constant = c;
    }

    fn idx2(&self, p: usize, q: usize) -> usize {
        p * self.n_modes + q
    }

    fn idx4(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n_modes + q) * self.n_modes + r) * self.n_modes + s
    }

    fn check_modes(&self, modes: &[usize]) -> Result<()> {
        match modes.iter().find(|&&m| m >= self.n_modes) {
            Some(m) => Err(domain!("mode {m} out of range for {} modes", self.n_modes)),
            None => Ok(()),
        }
    }

    pub fn one_body(&self, p: usize, q: usize) -> f64 {
        self.one_body[self.idx2(p, q)]
    }

    pub fn two_body(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.two_body[self.idx4(p, q, r, s)]
    }

    pub fn set_one_body(&mut self, p: usize, q: usize, value: f64) -> Result<()> {
        self.check_modes(&[p, q])?;
        let i = self.idx2(p, q);
        self.one_body[i] = value;
        Ok(())
    }

    pub fn set_two_body(
        &mut self,
        p: usize,
        q: usize,
        r: usize,
        s: usize,
        value: f64,
    ) -> Result<()> {
        self.check_modes(&[p, q, r, s])?;
        let i = self.idx4(p, q, r, s);
        self.two_body[i] = value;
        Ok(())
    }

    /// Checks `h_pq = h_qp` and `h_pqrs = h_srqp`, the conditions for the
    /// operator to be Hermitian with real integrals.
    pub fn check_hermitian(&self) -> Result<()> {
        let m = self.n_modes;
        for p in 0..m {
            for q in 0..p {
                let (a, b) = (self.one_body(p, q), self.one_body(q, p));
                if (a - b).abs() > SYMMETRY_TOL {
                    return Err(domain!(
                        "one-body integrals not symmetric: h[{p}][{q}]={a} vs h[{q}][{p}]={b}"
                    ));
                }
            }
        }
        for p in 0..m {
            for q in 0..m {
                for r in 0..m {
                    for s in 0..m {
                        let (a, b) = (self.two_body(p, q, r, s), self.two_body(s, r, q, p));
                        if (a - b).abs() > SYMMETRY_TOL {
                            return Err(domain!(
                                "two-body integrals not Hermitian: h[{p}{q}{r}{s}]={a} vs h[{s}{r}{q}{p}]={b}"
                            ));
                        }
                    }
                }
            }
        }
        if !self.constant.is_finite()
            || self
                .one_body
                .iter()
                .chain(&self.two_body)
                .any(|v| !v.is_finite())
        {
            return Err(domain!("integrals contain non-finite values"));
        }
        Ok(())
    }

    /// Jordan-Wigner encoding with terms collected; coefficients are real.
    pub fn to_pauli_sum(&self) -> Result<PauliSum> {
        assemble_hamiltonian(self)
    }
}

/// Maps the Hamiltonian to a Pauli sum. Scalar contributions (including the
/// constant offset) collect on the identity term.
pub fn assemble_hamiltonian(h: &SecondQuantizedHamiltonian) -> Result<PauliSum> {
    h.check_hermitian()?;
    let m = h.n_modes;
    let creators: Vec<PauliSum> = (0..m)
        .map(|p| jordan_wigner(FermionOp::create(p), m))
        .collect::<Result<_>>()?;
    let annihilators: Vec<PauliSum> = (0..m)
        .map(|p| jordan_wigner(FermionOp::annihilate(p), m))
        .collect::<Result<_>>()?;

    let mut out = PauliSum::zero(m);
    if h.constant != 0.0 {
        out.add_term(PauliString::identity(m), Complex64::new(h.constant, 0.0));
    }
    for p in 0..m {
        for q in 0..m {
            let c = h.one_body(p, q);
            if c != 0.0 {
                out.add_sum(
                    &creators[p]
                        .product(&annihilators[q])
                        .scaled(Complex64::new(c, 0.0)),
                );
            }
        }
    }
    for p in 0..m {
        for q in 0..m {
            if p == q {
                continue;
            }
            let pq = creators[p].product(&creators[q]);
            for r in 0..m {
                for s in 0..m {
                    let c = h.two_body(p, q, r, s);
                    if c == 0.0 || r == s {
                        continue;
                    }
                    let rs = annihilators[r].product(&annihilators[s]);
                    out.add_sum(&pq.product(&rs).scaled(Complex64::new(0.5 * c, 0.0)));
                }
            }
        }
    }
    out.into_hermitian(SYMMETRY_TOL)
}

/// `N = Σ_p a†_p a_p = Σ_p (I − Z_p)/2`.
pub fn number_operator(n_modes: usize) -> PauliSum {
    let mut out = PauliSum::zero(n_modes);
    for p in 0..n_modes {
        out.add_term(PauliString::identity(n_modes), Complex64::new(0.5, 0.0));
        out.add_term(
            PauliString::identity(n_modes).with(p, Pauli::Z),
            Complex64::new(-0.5, 0.0),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_mode_creation_is_sigma_minus() {
        let m = jordan_wigner(FermionOp::create(0), 1)
            .unwrap()
            .dense_matrix()
            .unwrap();
        let expect = DenseMatrix::from_rows(&[vec![c(0.0), c(0.0)], vec![c(1.0), c(0.0)]]);
        assert!(m.max_deviation(&expect) < 1e-15);
    }

    #[test]
    fn trailing_z_string_on_two_modes() {
        let a1 = jordan_wigner(FermionOp::create(0), 2).unwrap();
        let letters: Vec<_> = a1.iter().map(|(p, _)| p.letters()).collect();
        assert_eq!(letters, ["XZ", "YZ"]);
        let a2 = jordan_wigner(FermionOp::create(1), 2).unwrap();
        let letters: Vec<_> = a2.iter().map(|(p, _)| p.letters()).collect();
        assert_eq!(letters, ["IX", "IY"]);
        assert!(jordan_wigner(FermionOp::create(2), 2).is_err());
    }

    /// Brute-force check of the canonical anticommutators on dense matrices.
    fn max_car_deviation(m: usize) -> f64 {
        let dim = 1 << m;
        let dense = |op| jordan_wigner(op, m).unwrap().dense_matrix().unwrap();
        let ann: Vec<_> = (0..m).map(|p| dense(FermionOp::annihilate(p))).collect();
        let cre: Vec<_> = (0..m).map(|p| dense(FermionOp::create(p))).collect();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let ac = (&ann[i] * &cre[j]).add(&(&cre[j] * &ann[i]));
                let expect = if i == j {
                    DenseMatrix::identity(dim)
                } else {
                    DenseMatrix::zeros(dim)
                };
                worst = worst.max(ac.max_deviation(&expect));
                let aa = (&ann[i] * &ann[j]).add(&(&ann[j] * &ann[i]));
                worst = worst.max(aa.max_deviation(&DenseMatrix::zeros(dim)));
            }
        }
        worst
    }

    #[test]
    fn anticommutation_relations_hold() {
        for m in 1..=4 {
            assert!(max_car_deviation(m) < 1e-12, "M={m}");
        }
    }

    #[test]
    fn single_mode_hamiltonian_is_scaled_number_operator() {
        let mut h = SecondQuantizedHamiltonian::new(1);
        h.set_one_body(0, 0, 0.7).unwrap();
        let sum = assemble_hamiltonian(&h).unwrap();
        let expect = PauliSum::from_terms([(0.35, "I"), (-0.35, "Z")]).unwrap();
        assert_eq!(sum.len(), 2);
        for (p, v) in expect.iter() {
            assert!((sum.coefficient(p) - v).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_hamiltonian_is_empty() {
        assert!(assemble_hamiltonian(&SecondQuantizedHamiltonian::new(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn asymmetric_integrals_rejected() {
        let mut h = SecondQuantizedHamiltonian::new(2);
        h.set_one_body(0, 1, 0.3).unwrap();
        assert!(assemble_hamiltonian(&h).is_err());
        h.set_one_body(1, 0, 0.3).unwrap();
        assert!(assemble_hamiltonian(&h).is_ok());
        h.set_two_body(0, 1, 1, 0, 0.2).unwrap();
        assert!(assemble_hamiltonian(&h).is_ok());
        h.set_two_body(0, 1, 0, 1, 0.2).unwrap();
        assert!(assemble_hamiltonian(&h).is_err());
        assert!(h.set_one_body(2, 0, 1.0).is_err());
    }

    #[test]
    fn number_operator_counts_occupation() {
        let n = number_operator(4);
        let s = crate::state::StateVector::basis(4, 0b1011).unwrap();
        assert!((n.expectation(&s).unwrap() - 3.0).abs() < 1e-15);
    }
}
