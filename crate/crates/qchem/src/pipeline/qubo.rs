//! The `fold` analysis applied to a polynomial read from a file.

use std::path::PathBuf;

use super::fold::{analyze, report, SweepConfig};
use super::Report;
use crate::config::Params;
use crate::error::CliError;
use crate::io::{parse_pubo, read_text};

#[derive(Clone, Debug, PartialEq)]
pub struct QuboConfig {
    pub file: PathBuf,
    pub sweep: SweepConfig,
}

impl QuboConfig {
    pub fn from_params(mut p: Params) -> Result<Self, CliError> {
        let file = p.required::<String>("file")?;
        let file = p.resolve(&file);
        let sweep = SweepConfig::from_params(&mut p)?;
        p.finish()?;
        Ok(Self { file, sweep })
    }
}

pub fn run(cfg: &QuboConfig, seed: u64) -> Result<Report, CliError> {
    let problem = parse_pubo(&read_text(&cfg.file)?).map_err(|e| match e {
        CliError::Parse { error, .. } => CliError::parse(cfg.file.display(), error),
        other => other,
    })?;
    Ok(report(&analyze(&problem, &cfg.sweep, seed)?, &cfg.sweep))
}
