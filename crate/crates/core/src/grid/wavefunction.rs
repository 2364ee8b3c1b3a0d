use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::CONTAINMENT_RATIO;
use crate::error::{domain, Result};
use crate::math::*;
use crate::state::{load_amplitudes, StateVector, MAX_QUBITS};

/// A regular periodic grid with `2^n` points per dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    n_qubits_per_dim: usize,
    extents: Vec<(f64, f64)>,
}

impl GridSpec {
    /// One half-open interval `[lo, hi)` per dimension.
    pub fn new(n_qubits_per_dim: usize, extents: Vec<(f64, f64)>) -> Result<Self> {
        if n_qubits_per_dim == 0 {
            return Err(domain!("a grid needs at least one qubit per dimension"));
        }
        if extents.is_empty() {
            return Err(domain!("a grid needs at least one dimension"));
        }
        for &(lo, hi) in &extents {
            if !(lo.is_finite() && hi.is_finite() && hi > lo) {
                return Err(domain!("grid extent [{lo}, {hi}) is empty or not finite"));
            }
        }
        Ok(Self {
            n_qubits_per_dim,
            extents,
        })
    }

    /// The same interval in every one of `dims` dimensions.
    pub fn cubic(n_qubits_per_dim: usize, dims: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(n_qubits_per_dim, vec![(lo, hi); dims])
    }

    pub fn n_qubits_per_dim(&self) -> usize {
        self.n_qubits_per_dim
    }

    pub fn dims(&self) -> usize {
        self.extents.len()
    }

    pub fn points(&self) -> usize {
        1 << self.n_qubits_per_dim
    }

    pub fn extent(&self, d: usize) -> (f64, f64) {
        self.extents[d]
    }

    pub fn dx(&self, d: usize) -> f64 {
        let (lo, hi) = self.extents[d];
        (hi - lo) / self.points() as f64
    }

    /// `x_j = lo + j·Δx`.
    pub fn position(&self, d: usize, j: usize) -> f64 {
        self.extents[d].0 + j as f64 * self.dx(d)
    }

    /// `p_k = 2π k̃ / (N Δx)` with `k̃` the signed frequency of `k`.
    pub fn momentum(&self, d: usize, k: usize) -> f64 {
        let n = self.points();
        let signed = if k < n / 2 {
            k as f64
        } else {
            k as f64 - n as f64
        };
        TAU * signed / (n as f64 * self.dx(d))
    }
}

/// Masses and charges of distinguishable particles.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticleSet {
    masses: Vec<f64>,
    charges: Vec<f64>,
}

impl ParticleSet {
    pub fn new(masses: Vec<f64>, charges: Vec<f64>) -> Result<Self> {
        if masses.is_empty() || masses.len() != charges.len() {
            return Err(domain!(
                "need one charge per mass and at least one particle"
            ));
        }
        if masses.iter().any(|m| !(*m > 0.0) || !m.is_finite()) {
            return Err(domain!("particle masses must be positive and finite"));
        }
        if charges.iter().any(|q| !q.is_finite()) {
            return Err(domain!("particle charges must be finite"));
        }
        Ok(Self { masses, charges })
    }

    pub fn single(mass: f64, charge: f64) -> Result<Self> {
        Self::new(vec![mass], vec![charge])
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.masses[i]
    }

    pub fn charge(&self, i: usize) -> f64 {
        self.charges[i]
    }
}

/// A separable Gaussian `∝ exp(−|x−c|²/(4σ²) + i k₀·x)` for one particle.
/// `width` is the position standard deviation σ of `|ψ|²`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPacket {
    pub center: Vec<f64>,
    pub width: f64,
    pub momentum: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridWavefunction {
    grid: GridSpec,
    particles: ParticleSet,
    state: StateVector,
}

impl GridWavefunction {
    pub fn new(grid: GridSpec, particles: ParticleSet, state: StateVector) -> Result<Self> {
        let need = grid.n_qubits_per_dim * grid.dims() * particles.len();
        if state.n_qubits() != need {
            return Err(domain!(
                "state has {} qubits, the grid needs {need}",
                state.n_qubits()
            ));
        }
        Ok(Self {
            grid,
            particles,
            state,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn particles(&self) -> &ParticleSet {
        &self.particles
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Grid, particle count and mutable state at once.
    pub(crate) fn parts_mut(&mut self) -> (&GridSpec, usize, &mut StateVector) {
        (&self.grid, self.particles.len(), &mut self.state)
    }

    pub fn n_qubits(&self) -> usize {
        self.state.n_qubits()
    }

    pub fn n_coordinates(&self) -> usize {
        self.grid.dims() * self.particles.len()
    }

    /// Qubits of coordinate `d` of particle `i`.
    pub fn register(&self, i: usize, d: usize) -> Range<usize> {
        let n = self.grid.n_qubits_per_dim;
        let c = i * self.grid.dims() + d;
        c * n..(c + 1) * n
    }

    /// Grid index of coordinate `c` (flattened as `i·dims + d`) in `config`.
    #[inline]
    pub(crate) fn index_of(&self, config: usize, c: usize) -> usize {
        let n = self.grid.n_qubits_per_dim;
        (config >> (c * n)) & ((1 << n) - 1)
    }

    /// Positions of every coordinate in configuration `config`, laid out as
    /// `[i·dims + d]`.
    pub fn coordinates(&self, config: usize) -> Vec<f64> {
        let dims = self.grid.dims();
        (0..self.n_coordinates())
            .map(|c| self.grid.position(c % dims, self.index_of(config, c)))
            .collect()
    }

    /// Evaluates `f(coordinates)` on every configuration.
    pub fn tabulate(&self, f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
        (0..self.state.dim())
            .map(|x| f(&self.coordinates(x)))
            .collect()
    }

    /// `Σ_{i,d} p²/(2m_i)` on every momentum-space configuration.
    pub fn kinetic_diagonal(&self) -> Vec<f64> {
        let dims = self.grid.dims();
        (0..self.state.dim())
            .map(|x| {
                (0..self.n_coordinates())
                    .map(|c| {
                        let p = self.grid.momentum(c % dims, self.index_of(x, c));
                        p * p / (2.0 * self.particles.mass(c / dims))
                    })
                    .sum()
            })
            .collect()
    }

    /// The state with every coordinate register moved to momentum space.
    pub fn momentum_state(&self) -> Result<StateVector> {
        let mut s = self.state.clone();
        to_momentum(&mut s, &self.grid, self.particles.len())?;
        Ok(s)
    }

    pub fn mean_position(&self, i: usize, d: usize) -> f64 {
        let c = i * self.grid.dims() + d;
        self.state
            .expectation_diagonal(|x| self.grid.position(d, self.index_of(x, c)))
    }

    pub fn position_variance(&self, i: usize, d: usize) -> f64 {
        let c = i * self.grid.dims() + d;
        let mean = self.mean_position(i, d);
        self.state.expectation_diagonal(|x| {
            let r = self.grid.position(d, self.index_of(x, c)) - mean;
            r * r
        })
    }

    /// `⟨p⟩` of every coordinate, laid out as `[i·dims + d]`.
    pub fn mean_momenta(&self) -> Result<Vec<f64>> {
        let m = self.momentum_state()?;
        let dims = self.grid.dims();
        Ok((0..self.n_coordinates())
            .map(|c| m.expectation_diagonal(|x| self.grid.momentum(c % dims, self.index_of(x, c))))
            .collect())
    }

    /// `⟨T⟩ + ⟨V⟩` for a potential tabulated over configurations.
    pub fn energy(&self, potential: &[f64]) -> Result<f64> {
        let t = self.kinetic_diagonal();
        let m = self.momentum_state()?;
        let kinetic = m.expectation_diagonal(|x| t[x]);
        Ok(kinetic + self.state.expectation_diagonal(|x| potential[x]))
    }

    /// The wavefunction with particles `a` and `b` exchanged.
    pub fn swapped(&self, a: usize, b: usize) -> Result<Self> {
        if a >= self.particles.len() || b >= self.particles.len() {
            return Err(domain!("particle index out of range"));
        }
        let dims = self.grid.dims();
        let n = self.grid.n_qubits_per_dim;
        let block = dims * n;
        let mask = (1usize << block) - 1;
        let amps = self.state.amplitudes();
        let mut out = vec![num_complex::Complex64::new(0.0, 0.0); amps.len()];
        for (x, amp) in amps.iter().enumerate() {
            let xa = (x >> (a * block)) & mask;
            let xb = (x >> (b * block)) & mask;
            let cleared = x & !(mask << (a * block)) & !(mask << (b * block));
            out[cleared | (xa << (b * block)) | (xb << (a * block))] = *amp;
        }
        Ok(Self {
            grid: self.grid.clone(),
            particles: self.particles.clone(),
            state: StateVector::from_amplitudes(out)?,
        })
    }
}

/// Inverse QFT on every coordinate register: position to momentum.
pub(crate) fn to_momentum(s: &mut StateVector, grid: &GridSpec, n_particles: usize) -> Result<()> {
    fourier_all(s, grid, n_particles, true)
}

pub(crate) fn to_position(s: &mut StateVector, grid: &GridSpec, n_particles: usize) -> Result<()> {
    fourier_all(s, grid, n_particles, false)
}

fn fourier_all(
    s: &mut StateVector,
    grid: &GridSpec,
    n_particles: usize,
    inverse: bool,
) -> Result<()> {
    let n = grid.n_qubits_per_dim;
    for c in 0..grid.dims() * n_particles {
        s.apply_qft(c * n..(c + 1) * n, inverse)?;
    }
    Ok(())
}

/// A product of Gaussian packets, one per particle, loaded with the
/// qubit-by-qubit amplitude loader.
///
/// Fails if any packet's amplitude at the box edge exceeds
/// [`CONTAINMENT_RATIO`] of its peak, since the periodic grid would wrap it.
pub fn init_gaussian(
    grid: GridSpec,
    particles: ParticleSet,
    packets: &[GaussianPacket],
) -> Result<GridWavefunction> {
    let dims = grid.dims();
    if packets.len() != particles.len() {
        return Err(domain!(
            "{} packets for {} particles",
            packets.len(),
            particles.len()
        ));
    }
    let total = grid.n_qubits_per_dim * dims * particles.len();
    if total > MAX_QUBITS {
        return Err(domain!(
            "grid needs {total} qubits, over the {MAX_QUBITS}-qubit cap"
        ));
    }
    for (i, p) in packets.iter().enumerate() {
        if p.center.len() != dims || p.momentum.len() != dims {
            return Err(domain!("packet {i} has the wrong number of dimensions"));
        }
        if !(p.width > 0.0) || !p.width.is_finite() {
            return Err(domain!("packet {i} width must be positive"));
        }
        for d in 0..dims {
            let (lo, hi) = grid.extent(d);
            let gap = (p.center[d] - lo).min(hi - p.center[d]);
            let edge = if gap <= 0.0 {
                1.0
            } else {
                (-gap * gap / (4.0 * p.width * p.width)).exp()
            };
            if edge >= CONTAINMENT_RATIO {
                return Err(domain!(
                    "packet {i} is not contained along dimension {d}: edge amplitude {edge:.2e} of peak"
                ));
            }
        }
    }
    let shell = GridWavefunction {
        grid,
        particles,
        state: StateVector::zero(0)?,
    };
    let mut mass = Vec::with_capacity(1 << total);
    let mut phase = Vec::with_capacity(1 << total);
    for x in 0..1usize << total {
        let coords = shell.coordinates(x);
        let mut exponent = 0.0;
        let mut theta = 0.0;
        for (c, &r) in coords.iter().enumerate() {
            let p = &packets[c / dims];
            let d = c % dims;
            let u = r - p.center[d];
            exponent -= u * u / (2.0 * p.width * p.width);
            theta += p.momentum[d] * r;
        }
        mass.push(exponent.exp());
        phase.push(theta);
    }
    let state = load_amplitudes(&mass, Some(&phase))?;
    GridWavefunction::new(shell.grid, shell.particles, state)
}

/// `Σ_{i<j} q_i q_j / √(r_ij² + ε²)` on every configuration. `softening`
/// defaults to half the smallest grid spacing.
pub fn coulomb_potential(
    grid: &GridSpec,
    particles: &ParticleSet,
    softening: Option<f64>,
) -> Result<Vec<f64>> {
    let eps = match softening {
        Some(e) if e >= 0.0 && e.is_finite() => e,
        Some(e) => return Err(domain!("softening length must be non-negative, got {e}")),
        None => {
            (0..grid.dims())
                .map(|d| grid.dx(d))
                .fold(f64::INFINITY, f64::min)
                / 2.0
        }
    };
    let total = grid.n_qubits_per_dim * grid.dims() * particles.len();
    if total > MAX_QUBITS {
        return Err(domain!(
            "grid needs {total} qubits, over the {MAX_QUBITS}-qubit cap"
        ));
    }
    let shell = GridWavefunction {
        grid: grid.clone(),
        particles: particles.clone(),
        state: StateVector::zero(0)?,
    };
    let dims = grid.dims();
    let b = particles.len();
    Ok((0..1usize << total)
        .map(|x| {
            let r = shell.coordinates(x);
            let mut v = 0.0;
            for i in 0..b {
                for j in i + 1..b {
                    let d2: f64 = (0..dims)
                        .map(|d| (r[i * dims + d] - r[j * dims + d]).powi(2))
                        .sum();
                    v += particles.charge(i) * particles.charge(j) / (d2 + eps * eps).sqrt();
                }
            }
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packet(c: f64, w: f64, k: f64) -> GaussianPacket {
        GaussianPacket {
            center: vec![c],
            width: w,
            momentum: vec![k],
        }
    }

    #[test]
    fn gaussian_moments() {
        let grid = GridSpec::cubic(8, 1, -10.0, 10.0).unwrap();
        let w = init_gaussian(
            grid.clone(),
            ParticleSet::single(1.0, 0.0).unwrap(),
            &[packet(0.5, 1.0, 0.0)],
        )
        .unwrap();
        assert!((w.state().norm_sqr() - 1.0).abs() < 1e-10);
        assert!((w.mean_position(0, 0) - 0.5).abs() < grid.dx(0) / 2.0);
        assert!((w.position_variance(0, 0) - 1.0).abs() < 0.02);
    }

    #[test]
    fn momentum_kick_shows_in_mean_momentum() {
        let grid = GridSpec::cubic(8, 1, -10.0, 10.0).unwrap();
        let w = init_gaussian(
            grid,
            ParticleSet::single(1.0, 0.0).unwrap(),
            &[packet(0.0, 1.0, 1.5)],
        )
        .unwrap();
        assert!((w.mean_momenta().unwrap()[0] - 1.5).abs() < 1e-8);
    }

    #[test]
    fn uncontained_packet_rejected() {
        let grid = GridSpec::cubic(6, 1, -5.0, 5.0).unwrap();
        let p = ParticleSet::single(1.0, 0.0).unwrap();
        assert!(init_gaussian(grid.clone(), p.clone(), &[packet(3.0, 1.0, 0.0)]).is_err());
        assert!(init_gaussian(grid, p, &[packet(0.0, -1.0, 0.0)]).is_err());
    }

    #[test]
    fn momentum_lattice_wraps() {
        let g = GridSpec::cubic(3, 1, 0.0, 8.0).unwrap();
        assert_eq!(g.momentum(0, 1), TAU / 8.0);
        assert_eq!(g.momentum(0, 7), -TAU / 8.0);
        assert_eq!(g.momentum(0, 4), -TAU / 2.0);
    }

    #[test]
    fn coulomb_matches_double_loop() {
        let grid = GridSpec::cubic(3, 1, -4.0, 4.0).unwrap();
        let ps = ParticleSet::new(vec![1.0, 1.0], vec![1.0, -2.0]).unwrap();
        let v = coulomb_potential(&grid, &ps, Some(0.25)).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let r = grid.position(0, a) - grid.position(0, b);
                let expect = -2.0 / (r * r + 0.0625).sqrt();
                assert_eq!(v[a | (b << 3)], expect);
            }
        }
        let single =
            coulomb_potential(&grid, &ParticleSet::single(1.0, 1.0).unwrap(), None).unwrap();
        assert!(single.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn distant_like_charges_follow_inverse_distance() {
        let grid = GridSpec::cubic(6, 1, 0.0, 64.0).unwrap();
        let ps = ParticleSet::new(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        let v = coulomb_potential(&grid, &ps, Some(0.5)).unwrap();
        let r: f64 = 60.0;
        assert!((v[60 << 6] - 1.0 / r).abs() < 0.5f64.powi(2) / (2.0 * r.powi(3)) + 1e-12);
    }

    #[test]
    fn swap_is_involution() {
        let grid = GridSpec::cubic(3, 1, -6.0, 6.0).unwrap();
        let ps = ParticleSet::new(vec![1.0, 1.0], vec![0.0, 0.0]).unwrap();
        let w = init_gaussian(grid, ps, &[packet(-1.0, 0.5, 0.0), packet(1.0, 0.5, 0.3)]).unwrap();
        let s = w.swapped(0, 1).unwrap();
        assert!((s.mean_position(0, 0) - w.mean_position(1, 0)).abs() < 1e-12);
        assert!(s.swapped(0, 1).unwrap().state().max_deviation(w.state()) < 1e-15);
    }
}
