use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::QuboProblem;
use crate::error::{domain, Error, Result};

/// Highest degree [`reduce_to_qubo`] accepts.
pub const MAX_REDUCIBLE_DEGREE: usize = 4;

/// A polynomial over binary variables, `Σ_S c_S Π_{i∈S} q_i`.
///
/// Variable sets are kept sorted and deduplicated (`q² = q`); the empty set
/// is the constant term.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PuboProblem {
    n_vars: usize,
    terms: BTreeMap<Vec<usize>, f64>,
}

impl PuboProblem {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `coeff · Π q_i`; coefficients of equal variable sets accumulate
    /// and vanishing sums are dropped.
    pub fn add_term(&mut self, vars: &[usize], coeff: f64) -> Result<()> {
        if !coeff.is_finite() {
            return Err(domain!("coefficient of {vars:?} is not finite"));
        }
        if let Some(&v) = vars.iter().find(|&&v| v >= self.n_vars) {
            return Err(domain!(
                "variable {v} out of range for {} variables",
                self.n_vars
            ));
        }
        let mut key = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        let total = self.terms.get(&key).copied().unwrap_or(0.0) + coeff;
        if total == 0.0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, total);
        }
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    pub fn constant(&self) -> f64 {
        self.terms.get(&Vec::new()).copied().unwrap_or(0.0)
    }

    /// Value at the assignment whose bit `i` is `q_i`.
    pub fn energy_of_bits(&self, x: usize) -> f64 {
        self.terms
            .iter()
            .filter(|(k, _)| k.iter().all(|&i| x >> i & 1 == 1))
            .map(|(_, c)| c)
            .sum()
    }

    /// Value at an explicit 0/1 assignment.
    pub fn energy(&self, q: &[u8]) -> Result<f64> {
        if q.len() != self.n_vars {
            return Err(domain!(
                "assignment has {} variables, problem has {}",
                q.len(),
                self.n_vars
            ));
        }
        if q.iter().any(|&b| b > 1) {
            return Err(domain!("assignment entries must be 0 or 1"));
        }
        Ok(self.energy_of_bits(
            q.iter()
                .enumerate()
                .fold(0, |x, (i, &b)| x | (b as usize) << i),
        ))
    }
}

/// Output of [`reduce_to_qubo`].
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    /// Number of variables of the input problem; ancillas follow them.
    pub n_original: usize,
    /// Each ancilla `y` with the pair `(a, b)` it stands for, `y = q_a q_b`,
    /// in creation order.
    pub ancillas: Vec<(usize, usize, usize)>,
    /// The degree-≤2 binary polynomial including penalty terms.
    pub quadratic: PuboProblem,
    /// The same polynomial in spin form, rescaled to unit bounds.
    pub qubo: QuboProblem,
}

impl Reduction {
    /// Extends an assignment of the original variables with the ancilla
    /// values that satisfy every substitution.
    pub fn complete(&self, x: usize) -> usize {
        let mut full = x & ((1usize << self.n_original) - 1);
        for &(a, b, y) in &self.ancillas {
            if full >> a & 1 == 1 && full >> b & 1 == 1 {
                full |= 1 << y;
            }
        }
        full
    }

    /// Drops the ancilla bits.
    pub fn project(&self, x: usize) -> usize {
        x & ((1usize << self.n_original) - 1)
    }
}

/// Replaces products of variable pairs by ancillas until every term has
/// degree at most two, then moves to spin form.
///
/// Each round picks the pair occurring in the most terms of degree three or
/// more (ties go to the smallest pair), introduces `y = q_a q_b` and adds the
/// penalty `w (q_a q_b − 2 q_a y − 2 q_b y + 3y)`, which is zero exactly when
/// the substitution holds and at least `w` otherwise. The weight is
/// `w = 1 + Σ|c|` over the terms containing the pair.
pub fn reduce_to_qubo(p: &PuboProblem) -> Result<Reduction> {
    let degree = p.degree();
    if degree > MAX_REDUCIBLE_DEGREE {
        return Err(Error::Unsupported(alloc::format!(
            "degree {degree} exceeds the supported maximum of {MAX_REDUCIBLE_DEGREE}"
        )));
    }
    let mut terms: BTreeMap<Vec<usize>, f64> = p.terms.clone();
    let mut n = p.n_vars;
    let mut ancillas = Vec::new();
    loop {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for k in terms.keys().filter(|k| k.len() >= 3) {
            for (i, &a) in k.iter().enumerate() {
                for &b in &k[i + 1..] {
                    *counts.entry((a, b)).or_insert(0) += 1;
                }
            }
        }
        let Some((&(a, b), _)) = counts.iter().rev().max_by_key(|(_, &c)| c) else {
            break;
        };
        let y = n;
        n += 1;
        let weight = 1.0
            + terms
                .iter()
                .filter(|(k, _)| k.contains(&a) && k.contains(&b))
                .map(|(_, c)| c.abs())
                .sum::<f64>();
        let mut next: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (k, c) in terms {
            let key = if k.len() >= 3 && k.contains(&a) && k.contains(&b) {
                let mut r: Vec<usize> = k.into_iter().filter(|&v| v != a && v != b).collect();
                r.push(y);
                r.sort_unstable();
                r
            } else {
                k
            };
            *next.entry(key).or_insert(0.0) += c;
        }
        for (key, c) in [
            (alloc::vec![a, b], weight),
            (alloc::vec![a, y], -2.0 * weight),
            (alloc::vec![b, y], -2.0 * weight),
            (alloc::vec![y], 3.0 * weight),
        ] {
            *next.entry(key).or_insert(0.0) += c;
        }
        next.retain(|_, c| *c != 0.0);
        terms = next;
        ancillas.push((a, b, y));
    }
    let quadratic = PuboProblem { n_vars: n, terms };

    let mut h = alloc::vec![0.0; n];
    let mut couplings = Vec::new();
    let mut offset = 0.0;
    for (k, c) in quadratic.terms() {
        match *k {
            [] => offset += c,
            [i] => {
                h[i] += c / 2.0;
                offset += c / 2.0;
            }
            [i, j] => {
                couplings.push((i, j, c / 4.0));
                h[i] += c / 4.0;
                h[j] += c / 4.0;
                offset += c / 4.0;
            }
            _ => unreachable!("reduction left a term of degree {}", k.len()),
        }
    }
    let qubo = QuboProblem::rescaled(h, &couplings, offset)?;
    Ok(Reduction {
        n_original: p.n_vars,
        ancillas,
        quadratic,
        qubo,
    })
}
