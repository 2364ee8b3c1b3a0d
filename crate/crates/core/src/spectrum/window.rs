use crate::error::{domain, Result};
use crate::pauli::PauliSum;

/// Fraction of the bound width added on each side of a default window.
const PAD: f64 = 1.0 / 64.0;

/// Affine map between energies in `[E_min, E_max)` and phases in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyWindow {
    e_min: f64,
    e_max: f64,
}

impl EnergyWindow {
    pub fn new(e_min: f64, e_max: f64) -> Result<Self> {
        if !(e_min.is_finite() && e_max.is_finite() && e_min < e_max) {
            return Err(domain!(
                "energy window needs finite E_min < E_max, got [{e_min}, {e_max})"
            ));
        }
        Ok(Self { e_min, e_max })
    }

    /// Window around `c_I ± Σ|c_k|`, the bound every eigenvalue of `h`
    /// obeys, padded so the top of the spectrum does not wrap onto phase 0.
    pub fn gershgorin(h: &PauliSum) -> Self {
        let (lo, hi) = Self::spectral_bound(h);
        let half = (hi - lo).max(1e-3) / 2.0;
        let mid = (hi + lo) / 2.0;
        let half = half * (1.0 + 2.0 * PAD);
        Self {
            e_min: mid - half,
            e_max: mid + half,
        }
    }

    /// `(c_I − Σ|c_k|, c_I + Σ|c_k|)` over non-identity terms.
    pub fn spectral_bound(h: &PauliSum) -> (f64, f64) {
        let c = h.identity_coefficient();
        let r = h.off_identity_norm();
        (c - r, c + r)
    }

    pub fn e_min(&self) -> f64 {
        self.e_min
    }

    pub fn e_max(&self) -> f64 {
        self.e_max
    }

    pub fn width(&self) -> f64 {
        self.e_max - self.e_min
    }

    /// `(E − E_min)/(E_max − E_min)`; not reduced modulo 1.
    pub fn phase(&self, energy: f64) -> f64 {
        (energy - self.e_min) / self.width()
    }

    pub fn energy(&self, phase: f64) -> f64 {
        self.e_min + phase * self.width()
    }

    /// Whether `[lo, hi]` lies strictly inside the half-open window.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        lo >= self.e_min && hi < self.e_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_round_trip() {
        let w = EnergyWindow::new(-2.0, 2.0).unwrap();
        assert_eq!(w.phase(-2.0), 0.0);
        assert_eq!(w.phase(0.0), 0.5);
        assert_eq!(w.energy(0.25), -1.0);
    }

    #[test]
    fn rejects_empty_window() {
        assert!(EnergyWindow::new(1.0, 1.0).is_err());
        assert!(EnergyWindow::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn gershgorin_covers_bound() {
        let h = PauliSum::from_terms([(0.5, "II"), (1.0, "ZI"), (-0.25, "XX")]).unwrap();
        let w = EnergyWindow::gershgorin(&h);
        let (lo, hi) = EnergyWindow::spectral_bound(&h);
        assert_eq!((lo, hi), (-0.75, 1.75));
        assert!(w.covers(lo, hi));
        assert!(w.e_min() > lo - 0.1 && w.e_max() < hi + 0.1);
    }
}
