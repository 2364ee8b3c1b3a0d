#![allow(dead_code)]

use num_complex::Complex64;
use qchem::oracle::{diagonalize, Eigensystem};
use qchem::qchem_core::fermion::TrotterOrder;
use qchem::qchem_core::spectrum::{phase_estimation, EnergyWindow, TrotterUnitary};
use qchem::qchem_core::{PauliString, PauliSum, SeededRng, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Hermitian sum of `n_terms` random non-identity strings plus a random
/// identity coefficient.
pub fn random_pauli_sum(n: usize, n_terms: usize, rng: &mut ChaCha8Rng) -> PauliSum {
    let mut h = PauliSum::zero(n);
    h.add_term(
        PauliString::identity(n),
        Complex64::new(rng.random_range(-1.0..1.0), 0.0),
    );
    let mut added = 0;
    while added < n_terms {
        let letters: String = (0..n)
            .map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)])
            .collect();
        let p = PauliString::from_letters(&letters).unwrap();
        if p.is_identity() {
            continue;
        }
        h.add_term(p, Complex64::new(rng.random_range(-1.0..1.0), 0.0));
        added += 1;
    }
    h
}

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let amps = (0..1 << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::from_amplitudes(amps).unwrap()
}

/// Eigenvalue clusters: consecutive levels closer than `tol` are merged.
/// Each entry is `(lowest, highest, total weight of psi)`.
pub fn levels(es: &Eigensystem, psi: &StateVector, tol: f64) -> Vec<(f64, f64, f64)> {
    let w = es.overlaps(psi);
    let mut out: Vec<(f64, f64, f64)> = Vec::new();
    for (&e, &wk) in es.values.iter().zip(&w) {
        match out.last_mut() {
            Some(last) if e - last.1 <= tol => {
                last.1 = e;
                last.2 += wk;
            }
            _ => out.push((e, e, wk)),
        }
    }
    out
}

#[derive(Debug)]
pub struct PeaCheck {
    /// Largest distance from a peak to its cluster, over clusters with
    /// weight at least 0.05, in units of `W·2^−n`.
    pub energy_ratio: f64,
    /// Largest `|empirical − |c_k|²|` over all clusters.
    pub weight_error: f64,
    pub levels_checked: usize,
}

pub fn check_pea(
    h: &PauliSum,
    psi: &StateVector,
    n_ancilla: usize,
    shots: usize,
    steps: usize,
    seed: u64,
) -> PeaCheck {
    let es = diagonalize(h).unwrap();
    let window = EnergyWindow::gershgorin(h);
    let tol = window.width() * 0.5f64.powi(n_ancilla as i32);
    let lv = levels(&es, psi, 4.0 * tol);
    let u = TrotterUnitary::new(h, &window, steps, TrotterOrder::Second).unwrap();
    let r = phase_estimation(
        &u,
        psi,
        n_ancilla,
        &window,
        shots,
        &mut SeededRng::new(seed),
    )
    .unwrap();
    let centres: Vec<f64> = lv.iter().map(|l| 0.5 * (l.0 + l.1)).collect();
    let cells = r.partition(&centres);
    let mut check = PeaCheck {
        energy_ratio: 0.0,
        weight_error: 0.0,
        levels_checked: 0,
    };
    for (&(lo, hi, w), (peak, emp)) in lv.iter().zip(&cells) {
        check.weight_error = check.weight_error.max((emp - w).abs());
        if w >= 0.05 {
            check.levels_checked += 1;
            let ratio = peak.as_ref().map_or(f64::INFINITY, |p| {
                let e = p.energy;
                (lo - e).max(e - hi).max(0.0) / tol
            });
            check.energy_ratio = check.energy_ratio.max(ratio);
        }
    }
    check
}
