//! Exhaustive landscape, quadratization check and annealing sweep for a
//! binary polynomial; the built-in instance is the four-bit lattice fold.

use qchem_core::fold::{
    anneal, brute_force_minimize, folding_pubo, reduce_to_qubo, Landscape, PuboProblem, Reduction,
};
use qchem_core::schedule::AnnealSchedule;
use qchem_core::SeededRng;

use super::Report;
use crate::config::Params;
use crate::error::CliError;
use crate::io::{fmt_f64, Table};

/// Annealing settings shared by the `fold` and `qubo` pipelines.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub t_runs: Vec<f64>,
    pub dt: f64,
    /// Add one sampled bit string per run to the sweep table.
    pub sample: bool,
}

impl SweepConfig {
    pub fn from_params(p: &mut Params) -> Result<Self, CliError> {
        let t_runs = p
            .list::<f64>("t_runs")?
            .unwrap_or_else(|| vec![1.0, 10.0, 100.0]);
        if t_runs.iter().any(|&t| !(t > 0.0 && t <= 1e6)) {
            return Err(CliError::Config(
                "t_runs: every running time must lie in (0, 1e6]".into(),
            ));
        }
        let dt = p.ranged("dt", 0.05, 1e-6, 10.0)?;
        let sample = p.get("sample", false)?;
        Ok(Self { t_runs, dt, sample })
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            t_runs: vec![1.0, 10.0, 100.0],
            dt: 0.05,
            sample: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FoldConfig {
    pub sweep: SweepConfig,
}

impl FoldConfig {
    pub fn from_params(mut p: Params) -> Result<Self, CliError> {
        let sweep = SweepConfig::from_params(&mut p)?;
        p.finish()?;
        Ok(Self { sweep })
    }
}

/// One annealing run of the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub t_run: f64,
    pub success_probability: f64,
    pub n_steps: usize,
    pub sample: String,
}

/// Everything computed for one polynomial.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub landscape: Landscape,
    pub reduction: Reduction,
    pub reduced_landscape: Landscape,
    /// Whether the projected minimizers of the reduced problem are exactly
    /// the minimizers of the original one.
    pub reduction_sound: bool,
    pub sweep: Vec<SweepRow>,
}

pub fn analyze(p: &PuboProblem, sweep: &SweepConfig, seed: u64) -> Result<Analysis, CliError> {
    let landscape = brute_force_minimize(p)?;
    let reduction = reduce_to_qubo(p)?;
    let reduced_landscape = brute_force_minimize(&reduction.qubo)?;
    let mut projected: Vec<usize> = reduced_landscape
        .argmin
        .iter()
        .map(|&x| reduction.project(x))
        .collect();
    projected.sort_unstable();
    projected.dedup();
    let mut expected = landscape.argmin.clone();
    expected.sort_unstable();
    let reduction_sound = projected == expected;
    let root = SeededRng::new(seed);
    let rows = sweep
        .t_runs
        .iter()
        .enumerate()
        .map(|(i, &t_run)| {
            let out = anneal(
                &reduction.qubo,
                &AnnealSchedule::linear(t_run)?,
                sweep.dt,
                &mut root.fork(i as u64),
            )?;
            let bits = out.sample.outcome;
            Ok(SweepRow {
                t_run,
                success_probability: out.success_probability,
                n_steps: out.n_steps,
                sample: reduced_landscape.bits(bits),
            })
        })
        .collect::<Result<Vec<_>, qchem_core::Error>>()?;
    Ok(Analysis {
        landscape,
        reduction,
        reduced_landscape,
        reduction_sound,
        sweep: rows,
    })
}

/// Columns `bits, energy, rank, minimum`.
pub fn landscape_table(l: &Landscape) -> Table {
    let mut t = Table::new(&["bits", "energy", "rank", "minimum"]);
    for ((bits, e, rank), &(x, _)) in l.rows().zip(&l.entries) {
        let min = if l.argmin.contains(&x) { "1" } else { "0" };
        t.push(vec![bits, fmt_f64(e), rank.to_string(), min.to_string()]);
    }
    t
}

pub fn sweep_table(rows: &[SweepRow], with_sample: bool) -> Table {
    let mut header = vec!["t_run", "success_probability", "n_steps"];
    if with_sample {
        header.push("sample");
    }
    let mut t = Table::new(&header);
    for r in rows {
        let mut row = vec![
            fmt_f64(r.t_run),
            fmt_f64(r.success_probability),
            r.n_steps.to_string(),
        ];
        if with_sample {
            row.push(r.sample.clone());
        }
        t.push(row);
    }
    t
}

pub fn report(a: &Analysis, sweep: &SweepConfig) -> Report {
    let l = &a.landscape;
    let mut notes = Vec::new();
    let minima: Vec<String> = l.argmin.iter().map(|&x| l.bits(x)).collect();
    notes.push(format!(
        "{} minimum E = {} at {}",
        if minima.len() == 1 {
            "unique"
        } else {
            "degenerate"
        },
        l.min_energy,
        minima.join(", ")
    ));
    notes.push(format!(
        "reduction: {} ancillas, {} spins; projected minimizers {}",
        a.reduction.ancillas.len(),
        a.reduction.qubo.n_spins(),
        if a.reduction_sound {
            "agree (PASS)"
        } else {
            "disagree (FAIL)"
        }
    ));
    Report {
        primary: landscape_table(l),
        extra: vec![("sweep".into(), sweep_table(&a.sweep, sweep.sample))],
        notes,
    }
}

pub fn run(cfg: &FoldConfig, seed: u64) -> Result<Report, CliError> {
    let a = analyze(&folding_pubo(), &cfg.sweep, seed)?;
    Ok(report(&a, &cfg.sweep))
}
