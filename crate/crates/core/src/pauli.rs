//! Pauli strings and weighted sums of them.
//!
//! A string on up to 64 qubits is stored as a pair of bit masks `(x, z)`
//! with `I=(0,0)`, `X=(1,0)`, `Y=(1,1)`, `Z=(0,1)`, so that the operator is
//! `i^{|x∧z|} X^x Z^z`. Letter strings are written qubit 0 first.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::linalg::DenseMatrix;
use crate::state::StateVector;

/// Qubit cap for [`PauliSum::dense_matrix`].
pub const DENSE_ORACLE_CAP: usize = 12;

/// Coefficients smaller than this are dropped when sums are collected.
pub const COLLECT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

/// `i^k`.
fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= 64, "Pauli strings hold at most 64 qubits");
        Self {
            n_qubits,
            x: 0,
            z: 0,
        }
    }

    /// Parses a letter string such as `"XIZY"`, qubit 0 first.
    pub fn from_letters(letters: &str) -> Result<Self> {
        let n = letters.chars().count();
        if n > 64 {
            return Err(domain!("Pauli string longer than 64 qubits"));
        }
        let mut p = Self::identity(n);
        for (q, ch) in letters.chars().enumerate() {
            let letter = match ch {
                'I' | 'i' => Pauli::I,
                'X' | 'x' => Pauli::X,
                'Y' | 'y' => Pauli::Y,
                'Z' | 'z' => Pauli::Z,
                other => return Err(domain!("invalid Pauli letter {other:?}")),
            };
            p = p.with(q, letter);
        }
        Ok(p)
    }

    /// Returns a copy with `letter` on qubit `q`.
    pub fn with(mut self, q: usize, letter: Pauli) -> Self {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        let bit = 1u64 << q;
        self.x &= !bit;
        self.z &= !bit;
        match letter {
            Pauli::I => {}
            Pauli::X => self.x |= bit,
            Pauli::Y => {
                self.x |= bit;
                self.z |= bit;
            }
            Pauli::Z => self.z |= bit,
        }
        self
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn x_mask(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn letters(&self) -> String {
        (0..self.n_qubits)
            .map(|q| self.letter(q).as_char())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mask = self.x | self.z;
        (0..self.n_qubits).filter(|q| mask >> q & 1 == 1).collect()
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// `self · other = phase · result`.
    pub fn mul(&self, other: &PauliString) -> (Complex64, PauliString) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let prod = PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
        };
        // i^{a1+a2} (-1)^{|z1∧x2|} i^{-a3}
        let k = self.y_count()
            + other.y_count()
            + 2 * (self.z & other.x).count_ones()
            + 3 * prod.y_count();
        (i_pow(k), prod)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// `P|b⟩ = phase · |b'⟩`.
    #[inline]
    pub fn act_on_basis(&self, b: usize) -> (Complex64, usize) {
        let sign = if (self.z & b as u64).count_ones() % 2 == 1 {
            2
        } else {
            0
        };
        (i_pow(self.y_count() + sign), b ^ self.x as usize)
    }
}

impl Ord for PauliString {
    /// Lexicographic on the letter string (qubit 0 first, `I < X < Y < Z`).
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |p: &PauliString, q: usize| p.letter(q) as u8;
        let n = self.n_qubits.max(other.n_qubits);
        for q in 0..n {
            let a = if q < self.n_qubits { rank(self, q) } else { 0 };
            let b = if q < other.n_qubits {
                rank(other, q)
            } else {
                0
            };
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.n_qubits.cmp(&other.n_qubits)
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters())
    }
}

/// `Σ_k c_k P_k` over a fixed register width, kept in letter-string order.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    /// The zero operator.
    pub fn zero(n_qubits: usize) -> Self {
        assert!(n_qubits <= 64, "Pauli sums hold at most 64 qubits");
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    /// `c · I`.
    pub fn scalar(n_qubits: usize, c: f64) -> Self {
        let mut s = Self::zero(n_qubits);
        s.add_term(PauliString::identity(n_qubits), Complex64::new(c, 0.0));
        s
    }

    /// Builds a sum from `(coefficient, letters)` pairs.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (f64, &'a str)>) -> Result<Self> {
        let mut out: Option<PauliSum> = None;
        for (c, letters) in terms {
            let p = PauliString::from_letters(letters)?;
            let sum = out.get_or_insert_with(|| PauliSum::zero(p.n_qubits()));
            if p.n_qubits() != sum.n_qubits {
                return Err(domain!("Pauli strings of unequal length"));
            }
            sum.add_term(p, Complex64::new(c, 0.0));
        }
        out.ok_or_else(|| domain!("no terms given"))
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic letter order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    pub fn add_term(&mut self, p: PauliString, c: Complex64) {
        assert_eq!(p.n_qubits(), self.n_qubits, "Pauli string width mismatch");
        let slot = self.terms.entry(p).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if slot.norm() < COLLECT_TOL {
            self.terms.remove(&p);
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.n_qubits);
        for (p, v) in &self.terms {
            out.add_term(*p, v * c);
        }
        out
    }

    pub fn add_sum(&mut self, other: &PauliSum) {
        for (p, v) in &other.terms {
            self.add_term(*p, *v);
        }
    }

    pub fn product(&self, other: &PauliSum) -> PauliSum {
        let mut out = Self::zero(self.n_qubits);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (phase, r) = p.mul(q);
                out.add_term(r, phase * a * b);
            }
        }
        out
    }

    /// Hermitian conjugate: every Pauli string is self-adjoint.
    pub fn adjoint(&self) -> PauliSum {
        let mut out = Self::zero(self.n_qubits);
        for (p, v) in &self.terms {
            out.add_term(*p, v.conj());
        }
        out
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imaginary() <= tol
    }

    /// Real coefficients, or a domain error if any imaginary part exceeds `tol`.
    pub fn real_terms(&self, tol: f64) -> Result<Vec<(PauliString, f64)>> {
        if !self.is_hermitian(tol) {
            return Err(domain!(
                "operator is not Hermitian: imaginary coefficient {:.3e}",
                self.max_imaginary()
            ));
        }
        Ok(self.terms.iter().map(|(p, c)| (*p, c.re)).collect())
    }

    /// Drops imaginary parts, refusing if any exceed `tol`.
    pub fn into_hermitian(self, tol: f64) -> Result<PauliSum> {
        let terms = self.real_terms(tol)?;
        let mut out = Self::zero(self.n_qubits);
        for (p, c) in terms {
            out.add_term(p, Complex64::new(c, 0.0));
        }
        Ok(out)
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.coefficient(&PauliString::identity(self.n_qubits)).re
    }

    /// `Σ |c_k|` over non-identity terms; bounds `‖H − c_I I‖`.
    pub fn off_identity_norm(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(p, _)| !p.is_identity())
            .map(|(_, c)| c.norm())
            .sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|p| p.is_diagonal())
    }

    /// Diagonal entry `⟨b|H|b⟩` (real part).
    pub fn diagonal_element(&self, b: usize) -> f64 {
        self.terms
            .iter()
            .filter(|(p, _)| p.is_diagonal())
            .map(|(p, c)| (c * p.act_on_basis(b).0).re)
            .sum()
    }

    /// The `Z`-only part.
    pub fn diagonal_part(&self) -> PauliSum {
        let mut out = Self::zero(self.n_qubits);
        for (p, c) in self.terms.iter().filter(|(p, _)| p.is_diagonal()) {
            out.add_term(*p, *c);
        }
        out
    }

    /// Dense `2^n × 2^n` matrix; refuses registers over [`DENSE_ORACLE_CAP`].
    pub fn dense_matrix(&self) -> Result<DenseMatrix> {
        self.dense_matrix_capped(DENSE_ORACLE_CAP)
    }

    pub fn dense_matrix_capped(&self, cap: usize) -> Result<DenseMatrix> {
        if self.n_qubits > cap {
            return Err(Error::Resource {
                what: "dense matrix qubits",
                requested: self.n_qubits,
                cap,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DenseMatrix::zeros(dim);
        for (p, c) in &self.terms {
            for b in 0..dim {
                let (phase, row) = p.act_on_basis(b);
                m[(row, b)] += c * phase;
            }
        }
        Ok(m)
    }

    /// `H|ψ⟩` as a raw (unnormalized) amplitude vector.
    pub fn apply_to(&self, state: &StateVector) -> Result<Vec<Complex64>> {
        self.check_width(state)?;
        let amps = state.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (p, c) in &self.terms {
            for (b, a) in amps.iter().enumerate() {
                let (phase, row) = p.act_on_basis(b);
                out[row] += c * phase * a;
            }
        }
        Ok(out)
    }

    /// `⟨ψ|H|ψ⟩` for a Hermitian sum (real coefficients within 1e-12).
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        self.check_width(state)?;
        let terms = self.real_terms(1e-12)?;
        let amps = state.amplitudes();
        let mut total = 0.0;
        for (p, c) in terms {
            let mut acc = Complex64::new(0.0, 0.0);
            for (b, a) in amps.iter().enumerate() {
                let (phase, row) = p.act_on_basis(b);
                acc += amps[row].conj() * phase * a;
            }
            total += c * acc.re;
        }
        Ok(total)
    }

    fn check_width(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(domain!(
                "operator on {} qubits applied to a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            ));
        }
        Ok(())
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}·{}", c.re, p)?;
            } else {
                write!(f, "({}{:+}i)·{}", c.re, c.im, p)?;
            }
        }
        Ok(())
    }
}
