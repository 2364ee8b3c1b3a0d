use alloc::string::String;
use alloc::vec::Vec;

use super::PuboProblem;
use crate::error::{domain, Result};

/// A bond direction on the square lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    /// Two-bit code: up `11`, down `00`, left `10`, right `01`.
    pub fn code(self) -> &'static str {
        match self {
            Direction::Up => "11",
            Direction::Down => "00",
            Direction::Left => "10",
            Direction::Right => "01",
        }
    }

    pub fn from_bits(first: u8, second: u8) -> Result<Self> {
        Ok(match (first, second) {
            (1, 1) => Direction::Up,
            (0, 0) => Direction::Down,
            (1, 0) => Direction::Left,
            (0, 1) => Direction::Right,
            _ => return Err(domain!("bits must be 0 or 1")),
        })
    }

    pub fn step(self) -> (i64, i64) {
        match self {
            Direction::Up => (0, 1),
            Direction::Down => (0, -1),
            Direction::Left => (-1, 0),
            Direction::Right => (1, 0),
        }
    }
}

/// Concatenated bond codes. The first bond must point right.
pub fn encode_fold(directions: &[Direction]) -> Result<String> {
    match directions.first() {
        Some(Direction::Right) => Ok(directions.iter().map(|d| d.code()).collect()),
        Some(d) => Err(domain!("the first bond is fixed to point right, got {d:?}")),
        None => Err(domain!("a fold has at least one bond")),
    }
}

/// Parses a bit string (whitespace ignored) into bond directions.
pub fn decode_directions(bits: &str) -> Result<Vec<Direction>> {
    let digits: Vec<u8> = bits
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(domain!("unexpected character {other:?} in fold bits")),
        })
        .collect::<Result<_>>()?;
    if digits.is_empty() || digits.len() % 2 != 0 {
        return Err(domain!(
            "fold bits must come in a non-empty sequence of pairs"
        ));
    }
    let dirs: Vec<Direction> = digits
        .chunks_exact(2)
        .map(|p| Direction::from_bits(p[0], p[1]))
        .collect::<Result<_>>()?;
    if dirs[0] != Direction::Right {
        return Err(domain!("the first bond must be encoded as 01"));
    }
    Ok(dirs)
}

/// Lattice coordinates of the beads, starting at the origin.
pub fn decode_fold(bits: &str) -> Result<Vec<(i64, i64)>> {
    let mut walk = alloc::vec![(0i64, 0i64)];
    for d in decode_directions(bits)? {
        let (x, y) = *walk.last().unwrap();
        let (dx, dy) = d.step();
        walk.push((x + dx, y + dy));
    }
    Ok(walk)
}

/// The quartic folding energy of the four-residue instance, with `q` the
/// two free bond codes after the fixed first bond: `01 q₁q₂ q₃q₄`.
pub fn fold_energy(q: [u8; 4]) -> f64 {
    let [q1, q2, q3, q4] = q.map(|b| b as f64);
    4.0 - 3.0 * q1 + 4.0 * q2 - 4.0 * q1 * q2 - q3 + q1 * q3 - 2.0 * q2 * q3 + 4.0 * q4
        - 2.0 * q1 * q4
        - 8.0 * q2 * q4
        + 5.0 * q1 * q2 * q4
        - 2.0 * q3 * q4
        + 5.0 * q2 * q3 * q4
        - q1 * q2 * q3 * q4
}

/// [`fold_energy`] as a polynomial over variables `0..4` (variable `k` is
/// `q_{k+1}`).
pub fn folding_pubo() -> PuboProblem {
    let terms: [(&[usize], f64); 14] = [
        (&[], 4.0),
        (&[0], -3.0),
        (&[1], 4.0),
        (&[0, 1], -4.0),
        (&[2], -1.0),
        (&[0, 2], 1.0),
        (&[1, 2], -2.0),
        (&[3], 4.0),
        (&[0, 3], -2.0),
        (&[1, 3], -8.0),
        (&[0, 1, 3], 5.0),
        (&[2, 3], -2.0),
        (&[1, 2, 3], 5.0),
        (&[0, 1, 2, 3], -1.0),
    ];
    let mut p = PuboProblem::new(4);
    for (vars, c) in terms {
        p.add_term(vars, c).expect("indices are in range");
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residue {
    H,
    P,
}

/// Hydrophobic-polar lattice model: non-bonded nearest neighbours contribute
/// `E_HH = −1`, every other pairing `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpModel {
    pub sequence: Vec<Residue>,
}

impl HpModel {
    pub const E_HH: f64 = -1.0;
    pub const E_HP: f64 = 0.0;
    pub const E_PP: f64 = 0.0;

    pub fn parse(sequence: &str) -> Result<Self> {
        let sequence = sequence
            .chars()
            .map(|c| match c {
                'H' | 'h' => Ok(Residue::H),
                'P' | 'p' => Ok(Residue::P),
                other => Err(domain!("residue {other:?} is neither H nor P")),
            })
            .collect::<Result<_>>()?;
        Ok(Self { sequence })
    }

    pub fn pair_energy(a: Residue, b: Residue) -> f64 {
        match (a, b) {
            (Residue::H, Residue::H) => Self::E_HH,
            (Residue::P, Residue::P) => Self::E_PP,
            _ => Self::E_HP,
        }
    }

    /// Sum over non-bonded bead pairs at lattice distance one.
    pub fn contact_energy(&self, walk: &[(i64, i64)]) -> f64 {
        let mut e = 0.0;
        for i in 0..walk.len() {
            for j in i + 2..walk.len() {
                let d = (walk[i].0 - walk[j].0).abs() + (walk[i].1 - walk[j].1).abs();
                if d == 1 {
                    e += Self::pair_energy(self.sequence[i], self.sequence[j]);
                }
            }
        }
        e
    }
}

/// Lattice cells occupied by the chaperone next to the fixed first bond.
pub const CHAPERONE_CELLS: [(i64, i64); 3] = [(1, -1), (2, -1), (2, 0)];
/// Energy of one bead sitting on a chaperone cell.
pub const CHAPERONE_PENALTY: f64 = 4.0;
/// Energy of two beads sharing a cell.
pub const OVERLAP_PENALTY: f64 = 2.0;

/// Terms of [`walk_energy`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkEnergy {
    pub chaperone_overlaps: usize,
    pub self_overlaps: usize,
    pub contact: f64,
}

impl WalkEnergy {
    pub fn total(&self) -> f64 {
        CHAPERONE_PENALTY * self.chaperone_overlaps as f64
            + OVERLAP_PENALTY * self.self_overlaps as f64
            + self.contact
    }

    pub fn overlap_free(&self) -> bool {
        self.chaperone_overlaps == 0 && self.self_overlaps == 0
    }
}

/// Energy of a decoded walk from chaperone overlaps, coinciding bead pairs
/// and HP contacts.
pub fn walk_energy(walk: &[(i64, i64)], model: &HpModel) -> Result<WalkEnergy> {
    if walk.len() != model.sequence.len() {
        return Err(domain!(
            "walk has {} beads, sequence has {}",
            walk.len(),
            model.sequence.len()
        ));
    }
    let chaperone_overlaps = walk.iter().filter(|b| CHAPERONE_CELLS.contains(b)).count();
    let mut self_overlaps = 0;
    for i in 0..walk.len() {
        for j in i + 1..walk.len() {
            if walk[i] == walk[j] {
                self_overlaps += 1;
            }
        }
    }
    Ok(WalkEnergy {
        chaperone_overlaps,
        self_overlaps,
        contact: model.contact_energy(walk),
    })
}
