//! Ground-state energies of integral files by phase estimation.
//!
//! Per instance: a coarse full-register run is repeated until the system
//! register collapses onto the lowest observed peak, then iterative
//! estimation reads the phase of the collapsed state bit by bit.

use std::path::PathBuf;

use qchem_core::fermion::{SecondQuantizedHamiltonian, TrotterOrder};
use qchem_core::spectrum::{
    iterative_pea, phase_estimation, prepare_fock, EnergyWindow, Peak, TrotterUnitary, COMPILE_CAP,
};
use qchem_core::{Error, PauliSum, SeededRng, StateVector};

use super::Report;
use crate::config::Params;
use crate::error::CliError;
use crate::io::{fmt_f64, parse_integrals, read_text, Table};
use crate::oracle;

/// Weight below which the lowest peak is reported as a poor initial guess.
pub const OVERLAP_WARNING: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct PeaConfig {
    pub files: Vec<PathBuf>,
    pub labels: Vec<String>,
    pub bits: usize,
    pub shots_per_bit: usize,
    pub trotter_steps: usize,
    pub order: TrotterOrder,
    pub coarse_bits: usize,
    pub coarse_shots: usize,
    pub max_attempts: usize,
    pub occupations: Option<String>,
}

impl Default for PeaConfig {
    fn default() -> Self {
        Self {
            files: Vec::new(),
            labels: Vec::new(),
            bits: 20,
            shots_per_bit: 101,
            trotter_steps: 4096,
            order: TrotterOrder::Second,
            coarse_bits: 8,
            coarse_shots: 200,
            max_attempts: 64,
            occupations: None,
        }
    }
}

impl PeaConfig {
    pub fn from_params(mut p: Params) -> Result<Self, CliError> {
        let d = Self::default();
        let files = p
            .paths("files")?
            .ok_or_else(|| CliError::Config("[pea] files: required key is missing".into()))?;
        let labels = match p.list::<String>("labels")? {
            Some(l) if l.len() != files.len() => {
                return Err(CliError::Config(format!(
                    "[pea] labels: {} labels for {} files",
                    l.len(),
                    files.len()
                )))
            }
            Some(l) => l,
            None => files
                .iter()
                .map(|f| {
                    f.file_stem()
                        .unwrap_or_default()
                        .to_string_lossy()
                        .into_owned()
                })
                .collect(),
        };
        let order = TrotterOrder::from_int(p.ranged("order", 2u32, 1, 2)?)?;
        let cfg = Self {
            files,
            labels,
            bits: p.ranged("bits", d.bits, 1, 52)?,
            shots_per_bit: p.ranged("shots_per_bit", d.shots_per_bit, 1, 1_000_000)?,
            trotter_steps: p.ranged("trotter_steps", d.trotter_steps, 1, 1 << 30)?,
            order,
            coarse_bits: p.ranged("coarse_bits", d.coarse_bits, 1, 16)?,
            coarse_shots: p.ranged("coarse_shots", d.coarse_shots, 1, 1_000_000)?,
            max_attempts: p.ranged("max_attempts", d.max_attempts, 1, 1_000_000)?,
            occupations: p.opt("occupations")?,
        };
        if let Some(occ) = &cfg.occupations {
            if occ.is_empty() || !occ.chars().all(|c| c == '0' || c == '1') {
                return Err(CliError::Config(format!(
                    "[pea] occupations: {occ:?} is not a 0/1 string"
                )));
            }
        }
        p.finish()?;
        Ok(cfg)
    }
}

/// Result for one Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct PeaRow {
    pub label: String,
    pub estimate: f64,
    /// Lowest dense-diagonalization eigenvalue.
    pub exact: f64,
    /// Phase bits, most significant first.
    pub bits: String,
    pub abs_error: f64,
    /// `window width · 2^−bits`.
    pub tolerance: f64,
    pub window_width: f64,
    /// Oracle weight of the input state on the ground level.
    pub ground_overlap: f64,
    /// Empirical weight of the lowest coarse peak.
    pub lowest_peak_weight: f64,
    pub ambiguous_bits: usize,
    /// Every reading of the coarse full-register run.
    pub spectrum: Vec<Peak>,
}

impl PeaRow {
    pub fn within_tolerance(&self) -> bool {
        self.abs_error <= self.tolerance
    }
}

/// The computational basis state with the lowest diagonal energy; ties go
/// to the smaller index.
pub fn lowest_diagonal_state(h: &PauliSum) -> usize {
    (0..1usize << h.n_qubits())
        .min_by(|&a, &b| {
            h.diagonal_element(a)
                .total_cmp(&h.diagonal_element(b))
                .then(a.cmp(&b))
        })
        .unwrap_or(0)
}

fn occupation_string(b: usize, n: usize) -> String {
    (0..n)
        .map(|k| if b >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Groups of adjacent observed readings; returns the first group holding at
/// least 5% of the shots as an inclusive outcome range with its weight.
fn lowest_cluster(
    counts: &std::collections::BTreeMap<usize, usize>,
    shots: usize,
) -> Option<(usize, usize, f64)> {
    let mut groups: Vec<(usize, usize, usize)> = Vec::new();
    for (&o, &c) in counts {
        match groups.last_mut() {
            Some(g) if o <= g.1 + 2 => {
                g.1 = o;
                g.2 += c;
            }
            _ => groups.push((o, o, c)),
        }
    }
    let total = shots as f64;
    groups
        .iter()
        .find(|g| g.2 as f64 / total >= 0.05)
        .or(groups.first())
        .map(|&(lo, hi, c)| (lo, hi, c as f64 / total))
}

/// Estimates the ground energy of `h` starting from the occupation string
/// `occupations` (character `k` is qubit `k`).
pub fn estimate_ground_energy(
    label: &str,
    h: &PauliSum,
    occupations: Option<&str>,
    cfg: &PeaConfig,
    rng: &mut SeededRng,
) -> Result<PeaRow, CliError> {
    let n = h.n_qubits();
    if n > COMPILE_CAP {
        return Err(Error::Resource {
            what: "phase-estimation system qubits",
            requested: n,
            cap: COMPILE_CAP,
        }
        .into());
    }
    let occ = occupations
        .map(str::to_string)
        .unwrap_or_else(|| occupation_string(lowest_diagonal_state(h), n));
    if occ.len() != n {
        return Err(CliError::Config(format!(
            "occupation string {occ:?} has {} modes, Hamiltonian has {n}",
            occ.len()
        )));
    }
    let input = prepare_fock(&occ)?;
    let es = oracle::diagonalize(h)?;
    let exact = es.values[0];
    let ground_overlap = oracle::ground_overlap(&es, &input, 1e-9);

    let window = EnergyWindow::gershgorin(h);
    let u = TrotterUnitary::new(h, &window, cfg.trotter_steps, cfg.order)?;

    let coarse = phase_estimation(&u, &input, cfg.coarse_bits, &window, cfg.coarse_shots, rng)?;
    let (lo, hi, lowest_peak_weight) =
        lowest_cluster(&coarse.counts, coarse.shots).expect("at least one shot");
    let mut collapsed: Option<StateVector> = (lo..=hi)
        .contains(&coarse.record.outcome)
        .then(|| coarse.collapsed.clone());
    for _ in 1..cfg.max_attempts {
        if collapsed.is_some() {
            break;
        }
        let again = phase_estimation(&u, &input, cfg.coarse_bits, &window, 1, rng)?;
        if (lo..=hi).contains(&again.record.outcome) {
            collapsed = Some(again.collapsed);
        }
    }
    let collapsed = collapsed.ok_or_else(|| {
        CliError::Config(format!(
            "{label}: no collapse onto the lowest peak in {} attempts",
            cfg.max_attempts
        ))
    })?;

    let it = iterative_pea(&u, &collapsed, cfg.bits, cfg.shots_per_bit, &window, rng)?;
    let tolerance = window.width() * 0.5f64.powi(cfg.bits as i32);
    Ok(PeaRow {
        label: label.to_string(),
        estimate: it.energy,
        exact,
        bits: it.bit_string(),
        abs_error: (it.energy - exact).abs(),
        tolerance,
        window_width: window.width(),
        ground_overlap,
        lowest_peak_weight,
        ambiguous_bits: it.ambiguous.len(),
        spectrum: coarse.observed(),
    })
}

/// Runs every instance of an already-parsed sweep.
pub fn run_instances(
    instances: &[(String, SecondQuantizedHamiltonian)],
    cfg: &PeaConfig,
    seed: u64,
) -> Result<Vec<PeaRow>, CliError> {
    let root = SeededRng::new(seed);
    instances
        .iter()
        .enumerate()
        .map(|(i, (label, h))| {
            let mut rng = root.fork(i as u64);
            estimate_ground_energy(
                label,
                &h.to_pauli_sum()?,
                cfg.occupations.as_deref(),
                cfg,
                &mut rng,
            )
        })
        .collect()
}

pub fn table(rows: &[PeaRow]) -> Table {
    let mut t = Table::new(&[
        "label",
        "energy_estimate",
        "exact_energy",
        "bits",
        "abs_error",
        "tolerance",
        "window_width",
        "ground_overlap",
        "lowest_peak_weight",
    ]);
    for r in rows {
        t.push(vec![
            r.label.clone(),
            fmt_f64(r.estimate),
            fmt_f64(r.exact),
            r.bits.clone(),
            fmt_f64(r.abs_error),
            fmt_f64(r.tolerance),
            fmt_f64(r.window_width),
            fmt_f64(r.ground_overlap),
            fmt_f64(r.lowest_peak_weight),
        ]);
    }
    t
}

/// The coarse readings of every instance: `label, bits, phase, energy,
/// weight`.
pub fn spectrum_table(rows: &[PeaRow]) -> Table {
    let mut t = Table::new(&["label", "bits", "phase", "energy", "weight"]);
    for r in rows {
        for p in &r.spectrum {
            t.push(vec![
                r.label.clone(),
                p.bits.clone(),
                fmt_f64(p.phase),
                fmt_f64(p.energy),
                fmt_f64(p.weight),
            ]);
        }
    }
    t
}

pub fn run(cfg: &PeaConfig, seed: u64) -> Result<Report, CliError> {
    let mut instances = Vec::with_capacity(cfg.files.len());
    for (path, label) in cfg.files.iter().zip(&cfg.labels) {
        let h = parse_integrals(&read_text(path)?).map_err(|e| match e {
            CliError::Parse { error, .. } => CliError::parse(path.display(), error),
            other => other,
        })?;
        instances.push((label.clone(), h));
    }
    let rows = run_instances(&instances, cfg, seed)?;
    let mut notes = Vec::new();
    for r in &rows {
        if r.lowest_peak_weight < OVERLAP_WARNING {
            notes.push(format!(
                "warning: {}: lowest peak carries weight {:.3} < {OVERLAP_WARNING}; the initial state is a poor ground-state guess",
                r.label, r.lowest_peak_weight
            ));
        }
        if !r.within_tolerance() {
            notes.push(format!(
                "warning: {}: |error| {:.3e} exceeds {:.3e}",
                r.label, r.abs_error, r.tolerance
            ));
        }
    }
    let max_dev = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
    notes.push(format!(
        "{} instances, max |E_PEA - E_exact| = {max_dev:.3e}",
        rows.len()
    ));
    Ok(Report {
        primary: table(&rows),
        extra: vec![("spectrum".into(), spectrum_table(&rows))],
        notes,
    })
}
