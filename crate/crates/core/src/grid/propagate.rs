use alloc::vec::Vec;

use num_complex::Complex64;

use super::wavefunction::{to_momentum, to_position};
use super::GridWavefunction;
use crate::error::{domain, Result};
use crate::math::*;

/// Operator arrangement within one step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Splitting {
    /// `e^{−iVδt/2} e^{−iTδt} e^{−iVδt/2}`.
    #[default]
    Strang,
    /// `e^{−iTδt} e^{−iVδt}`: the potential acts first.
    FirstOrder,
}

/// Precomputed phase tables for repeated split-operator steps.
#[derive(Clone, Debug)]
pub struct SplitOperator {
    potential_phase: Vec<Complex64>,
    kinetic_phase: Vec<Complex64>,
    splitting: Splitting,
    dt: f64,
}

impl SplitOperator {
    pub fn new(
        wfn: &GridWavefunction,
        potential: &[f64],
        dt: f64,
        splitting: Splitting,
    ) -> Result<Self> {
        if potential.len() != wfn.state().dim() {
            return Err(domain!(
                "potential has {} entries, the grid has {} configurations",
                potential.len(),
                wfn.state().dim()
            ));
        }
        if !dt.is_finite() {
            return Err(domain!("time step must be finite"));
        }
        let v_scale = match splitting {
            Splitting::Strang => dt / 2.0,
            Splitting::FirstOrder => dt,
        };
        Ok(Self {
            potential_phase: potential.iter().map(|v| cis(-v * v_scale)).collect(),
            kinetic_phase: wfn
                .kinetic_diagonal()
                .into_iter()
                .map(|t| cis(-t * dt))
                .collect(),
            splitting,
            dt,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn step(&self, wfn: &mut GridWavefunction) -> Result<()> {
        let (grid, b, s) = wfn.parts_mut();
        multiply(s.amplitudes_mut(), &self.potential_phase);
        to_momentum(s, grid, b)?;
        multiply(s.amplitudes_mut(), &self.kinetic_phase);
        to_position(s, grid, b)?;
        if self.splitting == Splitting::Strang {
            multiply(s.amplitudes_mut(), &self.potential_phase);
        }
        Ok(())
    }
}

fn multiply(amps: &mut [Complex64], phases: &[Complex64]) {
    amps.iter_mut().zip(phases).for_each(|(a, p)| *a *= p);
}

/// One Strang step of length `dt > 0`.
pub fn split_operator_step(wfn: &mut GridWavefunction, potential: &[f64], dt: f64) -> Result<()> {
    if !(dt > 0.0) {
        return Err(domain!("time step must be positive, got {dt}"));
    }
    SplitOperator::new(wfn, potential, dt, Splitting::Strang)?.step(wfn)
}

/// Observables recorded after each step.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub time: f64,
    pub norm: f64,
    pub energy: f64,
    /// `⟨x⟩` per coordinate, laid out as `[i·dims + d]`.
    pub mean_position: Vec<f64>,
    pub mean_momentum: Vec<f64>,
}

fn observe(
    wfn: &GridWavefunction,
    potential: &[f64],
    kinetic: &[f64],
    step: usize,
    time: f64,
) -> Result<TraceRow> {
    let dims = wfn.grid().dims();
    let m = wfn.momentum_state()?;
    let n = wfn.n_coordinates();
    let mean_momentum = (0..n)
        .map(|c| m.expectation_diagonal(|x| wfn.grid().momentum(c % dims, wfn.index_of(x, c))))
        .collect();
    let mean_position = (0..n)
        .map(|c| wfn.mean_position(c / dims, c % dims))
        .collect();
    let energy =
        m.expectation_diagonal(|x| kinetic[x]) + wfn.state().expectation_diagonal(|x| potential[x]);
    Ok(TraceRow {
        step,
        time,
        norm: wfn.state().norm_sqr(),
        energy,
        mean_position,
        mean_momentum,
    })
}

/// Runs `k = t/dt` steps and records a [`TraceRow`] before the first step
/// and after every step. `dt` may be negative (with `t` of the same sign)
/// to run time backwards.
pub fn propagate(
    wfn: &GridWavefunction,
    potential: &[f64],
    t: f64,
    dt: f64,
    splitting: Splitting,
) -> Result<(GridWavefunction, Vec<TraceRow>)> {
    if dt == 0.0 || !dt.is_finite() || !t.is_finite() {
        return Err(domain!(
            "time and time step must be finite with a nonzero step"
        ));
    }
    let ratio = t / dt;
    let k = ratio.round();
    if k < 0.0 || (ratio - k).abs() > 1e-9 * ratio.abs().max(1.0) {
        return Err(domain!(
            "total time {t} is not a non-negative integer multiple of {dt}"
        ));
    }
    let k = k as usize;
    let op = SplitOperator::new(wfn, potential, dt, splitting)?;
    let kinetic = wfn.kinetic_diagonal();
    let mut w = wfn.clone();
    let mut trace = Vec::with_capacity(k + 1);
    trace.push(observe(&w, potential, &kinetic, 0, 0.0)?);
    for step in 1..=k {
        op.step(&mut w)?;
        trace.push(observe(&w, potential, &kinetic, step, step as f64 * dt)?);
    }
    Ok((w, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{init_gaussian, GaussianPacket, GridSpec, ParticleSet};
    use crate::state::StateVector;
    use alloc::vec;

    #[test]
    fn plane_wave_picks_up_kinetic_phase() {
        let grid = GridSpec::cubic(5, 1, 0.0, 16.0).unwrap();
        let k = 3usize;
        let p = grid.momentum(0, k);
        let amps = (0..32).map(|j| cis(p * grid.position(0, j))).collect();
        let wfn = GridWavefunction::new(
            grid,
            ParticleSet::single(2.0, 0.0).unwrap(),
            StateVector::from_amplitudes(amps).unwrap(),
        )
        .unwrap();
        let mut w = wfn.clone();
        let dt = 0.37;
        split_operator_step(&mut w, &vec![0.0; 32], dt).unwrap();
        let expect = cis(-p * p * dt / 4.0);
        for (a, b) in w.state().amplitudes().iter().zip(wfn.state().amplitudes()) {
            assert!((a - b * expect).norm() < 1e-12);
        }
    }

    #[test]
    fn free_momentum_is_conserved() {
        let grid = GridSpec::cubic(7, 1, -15.0, 15.0).unwrap();
        let pk = GaussianPacket {
            center: vec![-2.0],
            width: 1.0,
            momentum: vec![0.8],
        };
        let wfn = init_gaussian(grid, ParticleSet::single(1.0, 0.0).unwrap(), &[pk]).unwrap();
        let (_, trace) = propagate(&wfn, &vec![0.0; 128], 2.0, 0.1, Splitting::Strang).unwrap();
        assert_eq!(trace.len(), 21);
        for row in &trace {
            assert!((row.mean_momentum[0] - trace[0].mean_momentum[0]).abs() < 1e-10);
            assert!((row.norm - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn non_integer_step_count_rejected() {
        let grid = GridSpec::cubic(4, 1, -8.0, 8.0).unwrap();
        let pk = GaussianPacket {
            center: vec![0.0],
            width: 1.0,
            momentum: vec![0.0],
        };
        let wfn = init_gaussian(grid, ParticleSet::single(1.0, 0.0).unwrap(), &[pk]).unwrap();
        assert!(propagate(&wfn, &[0.0; 16], 1.05, 0.1, Splitting::Strang).is_err());
        assert!(propagate(&wfn, &[0.0; 16], -1.0, 0.1, Splitting::Strang).is_err());
        assert!(propagate(&wfn, &[0.0; 8], 1.0, 0.1, Splitting::Strang).is_err());
    }
}
