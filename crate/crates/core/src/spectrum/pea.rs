use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{ControlledUnitary, EnergyWindow};
use crate::error::{domain, Result};
use crate::state::{Gate, MeasurementRecord, SeededRng, StateVector, MAX_QUBITS};

/// Outcome statistics of a phase-estimation run.
#[derive(Clone, Debug)]
pub struct SpectralResult {
    pub n_ancilla: usize,
    pub window: EnergyWindow,
    pub shots: usize,
    /// Observed ancilla readings and how often each occurred.
    pub counts: BTreeMap<usize, usize>,
    /// Exact Born weight of every ancilla reading.
    pub distribution: Vec<f64>,
    /// One collapse of the full register, drawn after the shots.
    pub record: MeasurementRecord,
    /// System register left behind by `record`.
    pub collapsed: StateVector,
    pub aliasing_risk: bool,
}

/// One ancilla reading with its derived quantities.
#[derive(Clone, Debug, PartialEq)]
pub struct Peak {
    pub outcome: usize,
    /// Most significant bit first.
    pub bits: String,
    pub phase: f64,
    pub energy: f64,
    pub weight: f64,
}

impl SpectralResult {
    pub fn phase(&self, outcome: usize) -> f64 {
        outcome as f64 / (1u64 << self.n_ancilla) as f64
    }

    pub fn energy(&self, outcome: usize) -> f64 {
        self.window.energy(self.phase(outcome))
    }

    pub fn bits(&self, outcome: usize) -> String {
        (0..self.n_ancilla)
            .rev()
            .map(|k| if outcome >> k & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Empirical frequency of `outcome`.
    pub fn weight(&self, outcome: usize) -> f64 {
        *self.counts.get(&outcome).unwrap_or(&0) as f64 / self.shots as f64
    }

    pub fn peak(&self, outcome: usize) -> Peak {
        Peak {
            outcome,
            bits: self.bits(outcome),
            phase: self.phase(outcome),
            energy: self.energy(outcome),
            weight: self.weight(outcome),
        }
    }

    /// Every observed reading, in ascending outcome order.
    pub fn observed(&self) -> Vec<Peak> {
        self.counts.keys().map(|&o| self.peak(o)).collect()
    }

    /// The most frequent reading; ties go to the smaller outcome.
    pub fn most_likely(&self) -> Option<Peak> {
        let mut best: Option<(usize, usize)> = None;
        for (&o, &c) in &self.counts {
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((o, c));
            }
        }
        best.map(|(o, _)| self.peak(o))
    }

    /// Splits the observed readings among reference energies, assigning each
    /// reading to the nearest one. Returns, per reference, the most frequent
    /// reading in its cell and the cell's total empirical weight.
    pub fn partition(&self, energies: &[f64]) -> Vec<(Option<Peak>, f64)> {
        let mut cells: Vec<(Option<(usize, usize)>, usize)> = vec![(None, 0); energies.len()];
        if energies.is_empty() {
            return Vec::new();
        }
        for (&o, &c) in &self.counts {
            let e = self.energy(o);
            let k = (0..energies.len())
                .min_by(|&a, &b| (energies[a] - e).abs().total_cmp(&(energies[b] - e).abs()))
                .unwrap();
            let cell = &mut cells[k];
            cell.1 += c;
            if cell.0.is_none_or(|(_, bc)| c > bc) {
                cell.0 = Some((o, c));
            }
        }
        cells
            .into_iter()
            .map(|(m, total)| {
                (
                    m.map(|(o, _)| self.peak(o)),
                    total as f64 / self.shots as f64,
                )
            })
            .collect()
    }
}

/// Textbook phase estimation: Hadamards on `n_ancilla` ancillas, controlled
/// `U^{2^j}` from ancilla `j`, inverse QFT, then `shots` independent readings
/// of the ancilla register. Reading `y` estimates phase `y / 2^n_ancilla`.
pub fn phase_estimation<U: ControlledUnitary + ?Sized>(
    u: &U,
    input: &StateVector,
    n_ancilla: usize,
    window: &EnergyWindow,
    shots: usize,
    rng: &mut SeededRng,
) -> Result<SpectralResult> {
    let s = u.n_qubits();
    if input.n_qubits() != s {
        return Err(domain!(
            "input has {} qubits, unitary acts on {s}",
            input.n_qubits()
        ));
    }
    if n_ancilla == 0 || shots == 0 {
        return Err(domain!(
            "phase estimation needs at least one ancilla and one shot"
        ));
    }
    if s + n_ancilla > MAX_QUBITS {
        return Err(domain!(
            "{} qubits exceeds the {MAX_QUBITS}-qubit register cap",
            s + n_ancilla
        ));
    }
    let mut state = input.tensor(&StateVector::zero(n_ancilla)?)?;
    for j in 0..n_ancilla {
        state.apply(Gate::H(s + j))?;
    }
    for j in 0..n_ancilla {
        u.apply_controlled_power(&mut state, s + j, 1u64 << j)?;
    }
    state.apply_qft(s..s + n_ancilla, true)?;

    let ancillas: Vec<usize> = (s..s + n_ancilla).collect();
    let distribution = state.marginal(&ancillas)?;
    let mut counts = BTreeMap::new();
    for y in state.sample(&ancillas, shots, rng)? {
        *counts.entry(y).or_insert(0) += 1;
    }
    let record = state.measure(&ancillas, rng)?;
    let offset = record.outcome << s;
    let collapsed =
        StateVector::from_amplitudes(state.amplitudes()[offset..offset + (1 << s)].to_vec())?;
    Ok(SpectralResult {
        n_ancilla,
        window: *window,
        shots,
        counts,
        distribution,
        record,
        collapsed,
        aliasing_risk: u.aliasing_risk(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::DenseUnitary;

    fn unit_window() -> EnergyWindow {
        EnergyWindow::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn representable_phase_is_deterministic() {
        let u = DenseUnitary::from_phases(&[0.0, 0.25]).unwrap();
        let input = StateVector::basis(1, 1).unwrap();
        let mut rng = SeededRng::new(7);
        let r = phase_estimation(&u, &input, 2, &unit_window(), 200, &mut rng).unwrap();
        assert_eq!(r.counts.len(), 1);
        let top = r.most_likely().unwrap();
        assert_eq!(top.bits, "01");
        assert_eq!(top.phase, 0.25);
        assert!((r.distribution[1] - 1.0).abs() < 1e-12);
        assert!((r.collapsed.fidelity(&input) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenstate_input_repeats() {
        let u = DenseUnitary::from_phases(&[0.375, 0.8125, 0.5, 0.0625]).unwrap();
        let input = StateVector::basis(2, 1).unwrap();
        for seed in 0..5 {
            let mut rng = SeededRng::new(seed);
            let r = phase_estimation(&u, &input, 4, &unit_window(), 50, &mut rng).unwrap();
            assert_eq!(r.counts.keys().copied().collect::<Vec<_>>(), [13]);
        }
    }

    #[test]
    fn superposition_collapses_to_branch() {
        let u = DenseUnitary::from_phases(&[0.25, 0.75]).unwrap();
        let input = StateVector::from_amplitudes(vec![
            num_complex::Complex64::new(1.0, 0.0),
            num_complex::Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        let mut rng = SeededRng::new(3);
        let r = phase_estimation(&u, &input, 3, &unit_window(), 4000, &mut rng).unwrap();
        assert!((r.weight(2) - 0.5).abs() < 0.05 && (r.weight(6) - 0.5).abs() < 0.05);
        let branch = if r.record.outcome == 2 { 0 } else { 1 };
        assert!(
            (r.collapsed
                .fidelity(&StateVector::basis(1, branch).unwrap())
                - 1.0)
                .abs()
                < 1e-12
        );
        let cells = r.partition(&[0.25, 0.75]);
        assert_eq!(cells[0].0.as_ref().unwrap().outcome, 2);
        assert!((cells[0].1 + cells[1].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_input_rejected() {
        let u = DenseUnitary::from_phases(&[0.0, 0.5]).unwrap();
        let mut rng = SeededRng::new(0);
        let input = StateVector::zero(2).unwrap();
        assert!(phase_estimation(&u, &input, 2, &unit_window(), 1, &mut rng).is_err());
    }
}
