use qchem_core::spectrum::{prepare_cets, CetsSpec};

use super::Report;
use crate::config::Params;
use crate::error::CliError;
use crate::io::{fmt_f64, Table};

#[derive(Clone, Debug, PartialEq)]
pub struct CetsConfig {
    pub energies: Vec<f64>,
    /// `inf` selects the zero-temperature limit.
    pub beta: f64,
}

/// Largest spectrum accepted; the two registers then hold 20 qubits.
pub const MAX_LEVELS: usize = 1 << 10;

impl CetsConfig {
    pub fn from_params(mut p: Params) -> Result<Self, CliError> {
        let energies: Vec<f64> = p
            .list("energies")?
            .ok_or_else(|| CliError::Config("[cets] energies: required key is missing".into()))?;
        if energies.len() > MAX_LEVELS {
            return Err(qchem_core::Error::Resource {
                what: "thermal levels",
                requested: energies.len(),
                cap: MAX_LEVELS,
            }
            .into());
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(CliError::Config(
                "[cets] energies: every energy must be finite".into(),
            ));
        }
        let beta = p.ranged("beta", 1.0, 0.0, f64::INFINITY)?;
        p.finish()?;
        Ok(Self { energies, beta })
    }
}

/// Per level: Gibbs weight and the matching diagonal entry of the reduced
/// state of the encoded register.
pub fn evaluate(cfg: &CetsConfig) -> Result<Vec<(f64, f64, f64)>, CliError> {
    let spec = CetsSpec::new(cfg.energies.clone(), cfg.beta)?;
    let psi = prepare_cets(&spec, None)?;
    let n = spec.register_width().max(1);
    let rho = psi.reduced_density_matrix(n)?;
    Ok(spec
        .weights()
        .into_iter()
        .enumerate()
        .map(|(k, w)| (cfg.energies[k], w, rho[(k, k)].re))
        .collect())
}

pub fn run(cfg: &CetsConfig) -> Result<Report, CliError> {
    let rows = evaluate(cfg)?;
    let mut t = Table::new(&["k", "energy", "gibbs_weight", "reduced_diagonal"]);
    let mut dev: f64 = 0.0;
    for (k, &(e, w, d)) in rows.iter().enumerate() {
        dev = dev.max((w - d).abs());
        t.push(vec![k.to_string(), fmt_f64(e), fmt_f64(w), fmt_f64(d)]);
    }
    let notes = vec![format!(
        "{} levels at beta = {}: max |gibbs - diagonal| = {dev:.3e}",
        rows.len(),
        cfg.beta
    )];
    Ok(Report {
        primary: t,
        extra: Vec::new(),
        notes,
    })
}
