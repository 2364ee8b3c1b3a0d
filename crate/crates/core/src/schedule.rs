//! Interpolation envelopes for adiabatic evolution `H(τ) = A(τ)H_i + B(τ)H_f`.

use crate::error::{domain, Result};

/// Default dominance factor required at the endpoints.
pub const ENDPOINT_DOMINANCE: f64 = 10.0;

/// Envelope pair `(A(τ), B(τ))` over normalized time `τ ∈ [0, 1]`.
pub trait Schedule {
    fn envelopes(&self, tau: f64) -> (f64, f64);
}

/// `A(τ) = 1 − τ`, `B(τ) = τ`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LinearSchedule;

impl Schedule for LinearSchedule {
    fn envelopes(&self, tau: f64) -> (f64, f64) {
        (1.0 - tau, tau)
    }
}

impl<F: Fn(f64) -> (f64, f64)> Schedule for F {
    fn envelopes(&self, tau: f64) -> (f64, f64) {
        self(tau)
    }
}

/// A schedule together with its total running time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnealSchedule<S = LinearSchedule> {
    pub t_run: f64,
    pub envelopes: S,
}

impl AnnealSchedule<LinearSchedule> {
    pub fn linear(t_run: f64) -> Result<Self> {
        Self::new(t_run, LinearSchedule)
    }
}

impl<S: Schedule> AnnealSchedule<S> {
    /// Validates `t_run > 0`, `A(0) ≥ 10·B(0)` and `B(1) ≥ 10·A(1)`.
    pub fn new(t_run: f64, envelopes: S) -> Result<Self> {
        let s = Self { t_run, envelopes };
        s.validate(ENDPOINT_DOMINANCE)?;
        Ok(s)
    }

    pub fn validate(&self, dominance: f64) -> Result<()> {
        if !(self.t_run > 0.0) || !self.t_run.is_finite() {
            return Err(domain!(
                "running time must be positive and finite, got {}",
                self.t_run
            ));
        }
        let (a0, b0) = self.envelopes.envelopes(0.0);
        let (a1, b1) = self.envelopes.envelopes(1.0);
        if !(a0 >= dominance * b0.abs()) || a0 <= 0.0 {
            return Err(domain!(
                "schedule start not dominated by the initial Hamiltonian: A(0)={a0}, B(0)={b0}"
            ));
        }
        if !(b1 >= dominance * a1.abs()) || b1 <= 0.0 {
            return Err(domain!(
                "schedule end not dominated by the final Hamiltonian: A(1)={a1}, B(1)={b1}"
            ));
        }
        Ok(())
    }

    /// Envelopes at physical time `t`.
    pub fn at_time(&self, t: f64) -> (f64, f64) {
        self.envelopes.envelopes(t / self.t_run)
    }
}
