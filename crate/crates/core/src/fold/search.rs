use alloc::string::String;
use alloc::vec::Vec;

use super::{PuboProblem, QuboProblem};
use crate::error::{Error, Result};

/// Largest variable count enumerated exhaustively.
pub const ENUMERATION_CAP: usize = 24;
/// Energies within this distance of the minimum belong to the argmin set.
pub const ARGMIN_TOL: f64 = 1e-9;

/// A function of `n` binary variables, evaluated on assignments packed into
/// an integer with variable `i` at bit `i`.
pub trait BinaryObjective {
    fn n_vars(&self) -> usize;
    fn evaluate(&self, x: usize) -> f64;
}

impl BinaryObjective for PuboProblem {
    fn n_vars(&self) -> usize {
        PuboProblem::n_vars(self)
    }
    fn evaluate(&self, x: usize) -> f64 {
        self.energy_of_bits(x)
    }
}

/// Bit `i` set means `s_i = −1`.
impl BinaryObjective for QuboProblem {
    fn n_vars(&self) -> usize {
        self.n_spins()
    }
    fn evaluate(&self, x: usize) -> f64 {
        self.energy_of_basis(x)
    }
}

/// Every assignment with its energy, ascending by energy and then by the
/// assignment's bit string.
#[derive(Clone, Debug, PartialEq)]
pub struct Landscape {
    pub n_vars: usize,
    pub entries: Vec<(usize, f64)>,
    pub min_energy: f64,
    /// Assignments within [`ARGMIN_TOL`] of the minimum, in table order.
    pub argmin: Vec<usize>,
}

impl Landscape {
    /// `x` as a bit string, variable 0 first.
    pub fn bits(&self, x: usize) -> String {
        (0..self.n_vars)
            .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// `(bits, energy, rank)` with rank counted from 1.
    pub fn rows(&self) -> impl Iterator<Item = (String, f64, usize)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(r, &(x, e))| (self.bits(x), e, r + 1))
    }

    pub fn energy_of(&self, x: usize) -> Option<f64> {
        self.entries.iter().find(|(y, _)| *y == x).map(|(_, e)| *e)
    }
}

/// The lexicographic order of bit strings with variable 0 first equals the
/// numeric order of the bit-reversed integer.
fn lex_key(x: usize, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        x.reverse_bits() >> (usize::BITS as usize - n)
    }
}

/// Exhaustive minimization over all `2^n` assignments.
pub fn brute_force_minimize<P: BinaryObjective + ?Sized>(p: &P) -> Result<Landscape> {
    let n = p.n_vars();
    if n > ENUMERATION_CAP {
        return Err(Error::Resource {
            what: "enumerated variables",
            requested: n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut entries: Vec<(usize, f64)> = (0..1usize << n).map(|x| (x, p.evaluate(x))).collect();
    entries.sort_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then(lex_key(a.0, n).cmp(&lex_key(b.0, n)))
    });
    let min_energy = entries[0].1;
    let argmin = entries
        .iter()
        .take_while(|(_, e)| *e - min_energy <= ARGMIN_TOL)
        .map(|(x, _)| *x)
        .collect();
    Ok(Landscape {
        n_vars: n,
        entries,
        min_energy,
        argmin,
    })
}
