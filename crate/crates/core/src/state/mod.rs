//! Dense statevector register.
//!
//! Amplitudes are stored in a flat `Vec<Complex64>` of length `2^n`, indexed
//! by the basis-state integer with qubit 0 as the least significant bit.

mod gate;
mod loader;
mod measure;
mod qft;

pub use gate::Gate;
pub use loader::load_amplitudes;
pub use measure::{MeasurementRecord, SeededRng};

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::DenseMatrix;
use crate::math::*;

/// Registers larger than this are refused.
pub const MAX_QUBITS: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(domain!(
                "{n_qubits} qubits exceeds the {MAX_QUBITS}-qubit register cap"
            ));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(domain!(
                "basis index {index} out of range for {n_qubits} qubits"
            ));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps an amplitude vector, normalizing it.
    ///
    /// The length must be a power of two and the norm finite and nonzero.
    pub fn from_amplitudes(mut amps: Vec<Complex64>) -> Result<Self> {
        if !is_power_of_two(amps.len()) {
            return Err(domain!(
                "amplitude count {} is not a power of two",
                amps.len()
            ));
        }
        let n_qubits = amps.len().trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(domain!(
                "{n_qubits} qubits exceeds the {MAX_QUBITS}-qubit register cap"
            ));
        }
        let norm = stable_sum(amps.iter().map(|a| a.norm_sqr())).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(domain!("amplitudes have zero or non-finite norm"));
        }
        let inv = 1.0 / norm;
        amps.iter_mut().for_each(|a| *a *= inv);
        Ok(Self { n_qubits, amps })
    }

    /// Tensor product `self ⊗ high`: `self` occupies the low qubits.
    pub fn tensor(&self, high: &StateVector) -> Result<Self> {
        let n = self.n_qubits + high.n_qubits;
        if n > MAX_QUBITS {
            return Err(domain!(
                "{n} qubits exceeds the {MAX_QUBITS}-qubit register cap"
            ));
        }
        let mut amps = Vec::with_capacity(1 << n);
        for h in &high.amps {
            amps.extend(self.amps.iter().map(|l| l * h));
        }
        Ok(Self { n_qubits: n, amps })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Mutable access for kernels elsewhere in the crate. Callers are
    /// responsible for keeping the state normalized.
    #[inline]
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        stable_sum(self.amps.iter().map(|a| a.norm_sqr()))
    }

    /// Born weight of each basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        let mut re = 0.0;
        let mut im = 0.0;
        for (a, b) in self.amps.iter().zip(&other.amps) {
            let p = a.conj() * b;
            re += p.re;
            im += p.im;
        }
        Complex64::new(re, im)
    }

    /// `|⟨self|other⟩|²`; insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Largest per-amplitude deviation.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &StateVector) -> f64 {
        stable_sum(
            self.amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| (a - b).norm_sqr()),
        )
        .sqrt()
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            Err(domain!(
                "qubit {q} out of range for a {}-qubit register",
                self.n_qubits
            ))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_range(&self, qubits: &Range<usize>) -> Result<()> {
        if qubits.start >= qubits.end {
            return Err(domain!(
                "empty qubit range {}..{}",
                qubits.start,
                qubits.end
            ));
        }
        if qubits.end > self.n_qubits {
            return Err(domain!(
                "qubit range {}..{} exceeds a {}-qubit register",
                qubits.start,
                qubits.end,
                self.n_qubits
            ));
        }
        Ok(())
    }

    /// Applies a 2×2 unitary `[[m00, m01], [m10, m11]]` to qubit `q`.
    pub(crate) fn apply_single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let stride = 1usize << q;
        for block in (0..self.amps.len()).step_by(stride << 1) {
            for i in block..block + stride {
                let a0 = self.amps[i];
                let a1 = self.amps[i + stride];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i + stride] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// Multiplies every amplitude by `e^{iθ(x)}`.
    pub fn apply_diagonal_phase(&mut self, theta: impl Fn(usize) -> f64) {
        for (x, a) in self.amps.iter_mut().enumerate() {
            *a *= cis(theta(x));
        }
    }

    /// Multiplies every amplitude by a global phase `e^{iθ}`.
    pub fn apply_global_phase(&mut self, theta: f64) {
        let p = cis(theta);
        self.amps.iter_mut().for_each(|a| *a *= p);
    }

    /// Applies a dense unitary to the contiguous register `qubits`, optionally
    /// conditioned on `control` being `|1⟩`.
    ///
    /// The register value is read with `qubits.start` as its least
    /// significant bit.
    pub fn apply_register_unitary(
        &mut self,
        qubits: Range<usize>,
        unitary: &DenseMatrix,
        control: Option<usize>,
    ) -> Result<()> {
        self.check_range(&qubits)?;
        let width = qubits.end - qubits.start;
        if unitary.dim() != 1 << width {
            return Err(domain!(
                "unitary of dimension {} does not match a {width}-qubit register",
                unitary.dim()
            ));
        }
        if let Some(c) = control {
            self.check_qubit(c)?;
            if qubits.contains(&c) {
                return Err(domain!("control qubit {c} lies inside the target register"));
            }
        }
        let dim = unitary.dim();
        let shift = qubits.start;
        let reg_mask = (dim - 1) << shift;
        let ctrl_mask = control.map_or(0, |c| 1usize << c);
        let mut gathered = vec![Complex64::new(0.0, 0.0); dim];
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for base in 0..self.amps.len() {
            if base & reg_mask != 0 || base & ctrl_mask != ctrl_mask {
                continue;
            }
            for (k, g) in gathered.iter_mut().enumerate() {
                *g = self.amps[base | (k << shift)];
            }
            unitary.mul_vec_into(&gathered, &mut out);
            for (k, o) in out.iter().enumerate() {
                self.amps[base | (k << shift)] = *o;
            }
        }
        Ok(())
    }

    /// Born weights of the outcomes of the qubits in `qubits`; outcome bit
    /// `k` is the value of `qubits[k]`.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let mut out = vec![0.0; 1 << qubits.len()];
        for (x, a) in self.amps.iter().enumerate() {
            out[gather_bits(x, qubits)] += a.norm_sqr();
        }
        Ok(out)
    }

    /// Projects onto `outcome` of `qubits` and renormalizes; returns the
    /// pre-projection Born weight.
    pub fn project(&mut self, qubits: &[usize], outcome: usize) -> Result<f64> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let mut weight = 0.0;
        for (x, a) in self.amps.iter_mut().enumerate() {
            if gather_bits(x, qubits) == outcome {
                weight += a.norm_sqr();
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        if weight <= 0.0 {
            return Err(domain!("projection onto an outcome of zero probability"));
        }
        let inv = 1.0 / weight.sqrt();
        self.amps.iter_mut().for_each(|a| *a *= inv);
        Ok(weight)
    }

    /// Expectation of a real diagonal observable `f(x)`.
    pub fn expectation_diagonal(&self, f: impl Fn(usize) -> f64) -> f64 {
        stable_sum(
            self.amps
                .iter()
                .enumerate()
                .map(|(x, a)| a.norm_sqr() * f(x)),
        )
    }

    /// Reduced density matrix of the low `n_keep` qubits, tracing out the rest.
    pub fn reduced_density_matrix(&self, n_keep: usize) -> Result<DenseMatrix> {
        if n_keep > self.n_qubits {
            return Err(domain!("cannot keep {n_keep} of {} qubits", self.n_qubits));
        }
        let d = 1usize << n_keep;
        let rest = self.amps.len() / d;
        let mut rho = DenseMatrix::zeros(d);
        for r in 0..rest {
            let block = &self.amps[r * d..(r + 1) * d];
            for i in 0..d {
                if block[i] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    rho[(i, j)] += block[i] * block[j].conj();
                }
            }
        }
        Ok(rho)
    }
}

/// Collects the bits of `x` at positions `qubits` into a compact integer.
#[inline]
pub(crate) fn gather_bits(x: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &q)| acc | (((x >> q) & 1) << k))
}

/// Reads amplitudes from whitespace-separated text, one `re im` pair per line.
/// Blank lines and `#` comments are skipped. The vector is normalized.
pub fn parse_amplitudes(text: &str) -> Result<StateVector> {
    let mut amps = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse = |f: Option<&str>| -> Result<f64> {
            f.and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| domain!("line {}: expected `re im`", lineno + 1))
        };
        let re = parse(fields.next())?;
        let im = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(domain!("line {}: expected `re im`", lineno + 1));
        }
        amps.push(Complex64::new(re, im));
    }
    StateVector::from_amplitudes(amps)
}
