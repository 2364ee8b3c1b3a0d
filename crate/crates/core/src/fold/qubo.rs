use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::math::Float;
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Magnitudes above this bound are rejected by [`QuboProblem::new`].
const BOUND: f64 = 1.0;

/// An Ising problem with `|h_i| ≤ 1` and `|J_ij| ≤ 1`.
///
/// `scale` and `offset` relate it to the unbounded problem it was rescaled
/// from: `E_original = scale · E + offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuboProblem {
    h: Vec<f64>,
    /// Row-major `n × n`; only entries with `i < j` are used.
    j: Vec<f64>,
    scale: f64,
    offset: f64,
}

impl QuboProblem {
    /// Fields `h` and couplings `(i, j, J_ij)` with `i ≠ j`; repeated pairs
    /// accumulate.
    pub fn new(h: Vec<f64>, couplings: &[(usize, usize, f64)]) -> Result<Self> {
        let p = Self::unchecked(h, couplings)?;
        if let Some(m) = p.max_magnitude().filter(|m| *m > BOUND) {
            return Err(domain!(
                "coefficient magnitude {m} exceeds 1; rescale the problem"
            ));
        }
        Ok(p)
    }

    /// Builds the problem `scale·E + offset` from arbitrary coefficients.
    /// `scale` is the smallest power of two at least as large as every
    /// magnitude, so the division is exact.
    pub fn rescaled(h: Vec<f64>, couplings: &[(usize, usize, f64)], offset: f64) -> Result<Self> {
        let mut p = Self::unchecked(h, couplings)?;
        let m = p.max_magnitude().unwrap_or(0.0);
        let scale = if m > 0.0 {
            2f64.powi(Float::ceil(Float::log2(m)) as i32)
        } else {
            1.0
        };
        p.h.iter_mut().for_each(|v| *v /= scale);
        p.j.iter_mut().for_each(|v| *v /= scale);
        p.scale = scale;
        p.offset = offset;
        Ok(p)
    }

    fn unchecked(h: Vec<f64>, couplings: &[(usize, usize, f64)]) -> Result<Self> {
        let n = h.len();
        if h.iter().any(|v| !v.is_finite()) {
            return Err(domain!("fields must be finite"));
        }
        let mut j = vec![0.0; n * n];
        for &(a, b, v) in couplings {
            if a == b || a >= n || b >= n {
                return Err(domain!("invalid coupling ({a}, {b}) for {n} spins"));
            }
            if !v.is_finite() {
                return Err(domain!("coupling ({a}, {b}) is not finite"));
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            j[lo * n + hi] += v;
        }
        Ok(Self {
            h,
            j,
            scale: 1.0,
            offset: 0.0,
        })
    }

    fn max_magnitude(&self) -> Option<f64> {
        self.h
            .iter()
            .chain(&self.j)
            .map(|v| v.abs())
            .reduce(f64::max)
    }

    pub fn n_spins(&self) -> usize {
        self.h.len()
    }

    pub fn field(&self, i: usize) -> f64 {
        self.h[i]
    }

    pub fn fields(&self) -> &[f64] {
        &self.h
    }

    /// `J_ij` for `i < j` (symmetric access).
    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        if lo == hi {
            0.0
        } else {
            self.j[lo * self.h.len() + hi]
        }
    }

    /// Non-zero couplings `(i, j, J_ij)` with `i < j` in row order.
    pub fn couplings(&self) -> Vec<(usize, usize, f64)> {
        let n = self.h.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.j[i * n + j];
                if v != 0.0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Spin of variable `i` in basis state `x`: bit 0 means `+1`.
    #[inline]
    pub fn spin(x: usize, i: usize) -> f64 {
        if x >> i & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Energy of basis state `x` under the spin convention above.
    pub fn energy_of_basis(&self, x: usize) -> f64 {
        let n = self.h.len();
        let mut e = 0.0;
        for i in 0..n {
            let si = Self::spin(x, i);
            e -= self.h[i] * si;
            for j in i + 1..n {
                e += self.j[i * n + j] * si * Self::spin(x, j);
            }
        }
        e
    }

    /// `scale · E + offset` for basis state `x`.
    pub fn original_energy_of_basis(&self, x: usize) -> f64 {
        self.scale * self.energy_of_basis(x) + self.offset
    }
}

/// `E(s) = −Σ h_i s_i + Σ_{i<j} J_ij s_i s_j`.
pub fn qubo_energy(p: &QuboProblem, s: &[i8]) -> Result<f64> {
    let n = p.n_spins();
    if s.len() != n {
        return Err(domain!("assignment has {} spins, problem has {n}", s.len()));
    }
    if let Some(bad) = s.iter().position(|&v| v != 1 && v != -1) {
        return Err(domain!("spin {bad} is {}, not ±1", s[bad]));
    }
    let mut e = 0.0;
    for i in 0..n {
        e -= p.h[i] * s[i] as f64;
        for j in i + 1..n {
            e += p.j[i * n + j] * (s[i] * s[j]) as f64;
        }
    }
    Ok(e)
}

/// `H_f = −Σ h_i Z_i + Σ J_ij Z_i Z_j`, diagonal with `⟨x|H_f|x⟩` equal to
/// the energy of basis state `x`.
pub fn build_final_hamiltonian(p: &QuboProblem) -> PauliSum {
    let n = p.n_spins();
    let mut out = PauliSum::zero(n);
    for (i, &h) in p.h.iter().enumerate() {
        if h != 0.0 {
            out.add_term(
                PauliString::identity(n).with(i, Pauli::Z),
                Complex64::new(-h, 0.0),
            );
        }
    }
    for (i, j, v) in p.couplings() {
        out.add_term(
            PauliString::identity(n).with(i, Pauli::Z).with(j, Pauli::Z),
            Complex64::new(v, 0.0),
        );
    }
    out
}
