//! Wavepacket propagation on a position grid.

use qchem_core::grid::{
    coulomb_potential, init_gaussian, propagate, GaussianPacket, GridSpec, GridWavefunction,
    ParticleSet, Splitting, TraceRow,
};

use super::Report;
use crate::config::Params;
use crate::error::CliError;
use crate::io::{fmt_f64, Table};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Potential {
    Free,
    /// `Σ_i ½ m_i ω² |x_i|²`.
    Harmonic {
        omega: f64,
    },
    Coulomb {
        softening: Option<f64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynamicsConfig {
    pub qubits_per_dim: usize,
    pub dims: usize,
    pub lo: f64,
    pub hi: f64,
    pub masses: Vec<f64>,
    pub charges: Vec<f64>,
    /// One packet per particle.
    pub packets: Vec<GaussianPacket>,
    pub potential: Potential,
    pub t: f64,
    pub dt: f64,
    pub splitting: Splitting,
    /// Keep every `every`-th trace row (the first and last are always kept).
    pub every: usize,
}

fn per_coordinate(
    p: &mut Params,
    key: &str,
    n: usize,
    default: impl Fn(usize) -> f64,
) -> Result<Vec<f64>, CliError> {
    match p.list::<f64>(key)? {
        None => Ok((0..n).map(default).collect()),
        Some(v) if v.len() == n && v.iter().all(|x| x.is_finite()) => Ok(v),
        Some(v) => Err(CliError::Config(format!(
            "[dynamics] {key}: expected {n} finite values, got {}",
            v.len()
        ))),
    }
}

impl DynamicsConfig {
    pub fn from_params(mut p: Params) -> Result<Self, CliError> {
        let qubits_per_dim = p.ranged("qubits_per_dim", 8usize, 1, 20)?;
        let dims = p.ranged("dims", 1usize, 1, 3)?;
        let lo = p.ranged("lo", -10.0, -1e6, 1e6)?;
        let hi = p.ranged("hi", 10.0, -1e6, 1e6)?;
        if !(lo < hi) {
            return Err(CliError::Config(format!(
                "[dynamics] lo ({lo}) must be below hi ({hi})"
            )));
        }
        let masses = p.list::<f64>("masses")?.unwrap_or_else(|| vec![1.0]);
        if masses.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
            return Err(CliError::Config(
                "[dynamics] masses: every mass must be positive and finite".into(),
            ));
        }
        let np = masses.len();
        if np > 3 {
            return Err(CliError::Config(format!(
                "[dynamics] masses: at most 3 particles, got {np}"
            )));
        }
        let qubits = qubits_per_dim * dims * np;
        if qubits > qchem_core::state::MAX_QUBITS {
            return Err(qchem_core::Error::Resource {
                what: "grid qubits",
                requested: qubits,
                cap: qchem_core::state::MAX_QUBITS,
            }
            .into());
        }
        let charges = per_coordinate(&mut p, "charges", np, |_| 0.0)?;
        let nc = np * dims;
        let spacing = (hi - lo) / (np + 1) as f64;
        let centers = per_coordinate(&mut p, "centers", nc, |c| {
            lo + spacing * (c / dims + 1) as f64
        })?;
        let momenta = per_coordinate(&mut p, "momenta", nc, |_| 0.0)?;
        let widths = per_coordinate(&mut p, "widths", np, |_| 1.0)?;
        if widths.iter().any(|&w| w <= 0.0) {
            return Err(CliError::Config(
                "[dynamics] widths: every width must be positive".into(),
            ));
        }
        let packets = (0..np)
            .map(|i| GaussianPacket {
                center: centers[i * dims..(i + 1) * dims].to_vec(),
                width: widths[i],
                momentum: momenta[i * dims..(i + 1) * dims].to_vec(),
            })
            .collect();
        let kind: String = p.get("potential", "harmonic".to_string())?;
        let potential = match kind.as_str() {
            "free" => Potential::Free,
            "harmonic" => Potential::Harmonic {
                omega: p.ranged("omega", 1.0, 0.0, 1e6)?,
            },
            "coulomb" => {
                let softening = p.opt::<f64>("softening")?;
                if softening.is_some_and(|e| !(e >= 0.0 && e.is_finite())) {
                    return Err(CliError::Config(
                        "[dynamics] softening: must be non-negative".into(),
                    ));
                }
                Potential::Coulomb { softening }
            }
            other => {
                return Err(CliError::Config(format!(
                    "[dynamics] potential: {other:?} is not one of free, harmonic, coulomb"
                )))
            }
        };
        let t = p.ranged("t", std::f64::consts::TAU, -1e9, 1e9)?;
        let dt = p.ranged("dt", t / 1000.0, -1e3, 1e3)?;
        if dt == 0.0 || t * dt < 0.0 {
            return Err(CliError::Config(format!(
                "[dynamics] dt ({dt}) must be nonzero with the sign of t ({t})"
            )));
        }
        let ratio = t / dt;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.abs().max(1.0) {
            return Err(CliError::Config(format!(
                "[dynamics] t ({t}) is not an integer multiple of dt ({dt})"
            )));
        }
        let splitting = match p.get("splitting", "strang".to_string())?.as_str() {
            "strang" => Splitting::Strang,
            "first" => Splitting::FirstOrder,
            other => {
                return Err(CliError::Config(format!(
                    "[dynamics] splitting: {other:?} is not strang or first"
                )))
            }
        };
        let every = p.ranged("every", 1usize, 1, usize::MAX)?;
        p.finish()?;
        Ok(Self {
            qubits_per_dim,
            dims,
            lo,
            hi,
            masses,
            charges,
            packets,
            potential,
            t,
            dt,
            splitting,
            every,
        })
    }

    pub fn initial_state(&self) -> Result<GridWavefunction, CliError> {
        let grid = GridSpec::cubic(self.qubits_per_dim, self.dims, self.lo, self.hi)?;
        let particles = ParticleSet::new(self.masses.clone(), self.charges.clone())?;
        Ok(init_gaussian(grid, particles, &self.packets)?)
    }

    /// Potential energy on every grid configuration of `wfn`.
    pub fn potential_on(&self, wfn: &GridWavefunction) -> Result<Vec<f64>, CliError> {
        Ok(match self.potential {
            Potential::Free => vec![0.0; wfn.state().dim()],
            Potential::Harmonic { omega } => {
                let dims = self.dims;
                let masses = &self.masses;
                wfn.tabulate(|x| {
                    x.iter()
                        .enumerate()
                        .map(|(c, &r)| 0.5 * masses[c / dims] * omega * omega * r * r)
                        .sum()
                })
            }
            Potential::Coulomb { softening } => {
                coulomb_potential(wfn.grid(), wfn.particles(), softening)?
            }
        })
    }
}

pub fn simulate(cfg: &DynamicsConfig) -> Result<(GridWavefunction, Vec<TraceRow>), CliError> {
    let wfn = cfg.initial_state()?;
    let v = cfg.potential_on(&wfn)?;
    Ok(propagate(&wfn, &v, cfg.t, cfg.dt, cfg.splitting)?)
}

/// Columns `step, time, norm, energy`, then `x_<c>` and `p_<c>` for every
/// coordinate `c = particle·dims + dimension`.
pub fn trace_table(trace: &[TraceRow], every: usize) -> Table {
    let nc = trace.first().map_or(0, |r| r.mean_position.len());
    let mut header: Vec<String> = ["step", "time", "norm", "energy"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((0..nc).map(|c| format!("x_{c}")));
    header.extend((0..nc).map(|c| format!("p_{c}")));
    let mut t = Table {
        header,
        rows: Vec::new(),
    };
    let last = trace.len().saturating_sub(1);
    for (i, r) in trace.iter().enumerate() {
        if i % every != 0 && i != last {
            continue;
        }
        let mut row = vec![
            r.step.to_string(),
            fmt_f64(r.time),
            fmt_f64(r.norm),
            fmt_f64(r.energy),
        ];
        row.extend(r.mean_position.iter().map(|&x| fmt_f64(x)));
        row.extend(r.mean_momentum.iter().map(|&x| fmt_f64(x)));
        t.push(row);
    }
    t
}

pub fn run(cfg: &DynamicsConfig) -> Result<Report, CliError> {
    let (_, trace) = simulate(cfg)?;
    let first = &trace[0];
    let last = trace.last().unwrap();
    let notes = vec![format!(
        "{} steps: norm drift {:.3e}, energy drift {:.3e}",
        last.step,
        (last.norm - first.norm).abs(),
        (last.energy - first.energy).abs()
    )];
    Ok(Report {
        primary: trace_table(&trace, cfg.every),
        extra: Vec::new(),
        notes,
    })
}
