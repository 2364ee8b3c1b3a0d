use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StateVector;
use crate::error::Result;

/// A ChaCha8 stream that remembers the seed it was built from.
#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child stream `index`, derived deterministically from the
    /// parent seed (not from the parent's current position).
    pub fn fork(&self, index: u64) -> SeededRng {
        // splitmix64 of (seed, index)
        let mut z = self.seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        SeededRng::new(z ^ (z >> 31))
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Result of measuring some qubits of a register.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    /// Measured qubits; bit `k` of `outcome` is the value of `qubits[k]`.
    pub qubits: Vec<usize>,
    pub outcome: usize,
    /// Born weight of `outcome` before the collapse.
    pub probability: f64,
    pub rng_seed: u64,
}

impl MeasurementRecord {
    /// The outcome as a binary string, most significant bit first.
    pub fn bit_string(&self) -> String {
        (0..self.qubits.len())
            .rev()
            .map(|k| if self.outcome >> k & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Inverse-CDF draw over `weights` (ascending outcome order).
pub(crate) fn sample_index(weights: &[f64], u: f64) -> usize {
    let total: f64 = weights.iter().sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last_nonzero = i;
            acc += w;
            if target < acc {
                return i;
            }
        }
    }
    last_nonzero
}

impl StateVector {
    /// Measures `qubits` in the computational basis, collapsing the state.
    pub fn measure(&mut self, qubits: &[usize], rng: &mut SeededRng) -> Result<MeasurementRecord> {
        let weights = self.marginal(qubits)?;
        let outcome = sample_index(&weights, rng.uniform());
        let probability = self.project(qubits, outcome)?;
        Ok(MeasurementRecord {
            qubits: qubits.to_vec(),
            outcome,
            probability,
            rng_seed: rng.seed(),
        })
    }

    /// Draws `shots` outcomes of `qubits` from the Born distribution without
    /// collapsing the state; each shot is an independent preparation.
    pub fn sample(
        &self,
        qubits: &[usize],
        shots: usize,
        rng: &mut SeededRng,
    ) -> Result<Vec<usize>> {
        let weights = self.marginal(qubits)?;
        let mut cdf = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for w in &weights {
            acc += w;
            cdf.push(acc);
        }
        Ok((0..shots)
            .map(|_| {
                let t = rng.uniform() * acc;
                let i = cdf.partition_point(|&c| c <= t).min(weights.len() - 1);
                // never land on a zero-weight outcome through rounding
                if weights[i] > 0.0 {
                    i
                } else {
                    sample_index(&weights, t / acc)
                }
            })
            .collect())
    }
}
