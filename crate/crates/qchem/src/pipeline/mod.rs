//! The five experiment pipelines.
//!
//! Each pipeline has a typed configuration built from [`Params`] (which
//! validates every key before anything runs) and a `run` function returning
//! a [`Report`].

pub mod cets;
pub mod dynamics;
pub mod fold;
pub mod pea;
pub mod qubo;

use crate::config::{Params, Pipeline};
use crate::error::CliError;
use crate::io::Table;

/// Tables and human-readable notes produced by one pipeline run.
#[derive(Clone, Debug)]
pub struct Report {
    pub primary: Table,
    /// Secondary tables, each with a short name used as a file suffix.
    pub extra: Vec<(String, Table)>,
    /// Summary lines and warnings.
    pub notes: Vec<String>,
}

/// Validates `params` for `pipeline`, then runs it.
pub fn run(pipeline: Pipeline, params: Params, seed: u64) -> Result<Report, CliError> {
    match pipeline {
        Pipeline::Pea => pea::run(&pea::PeaConfig::from_params(params)?, seed),
        Pipeline::Dynamics => dynamics::run(&dynamics::DynamicsConfig::from_params(params)?),
        Pipeline::Fold => fold::run(&fold::FoldConfig::from_params(params)?, seed),
        Pipeline::Qubo => qubo::run(&qubo::QuboConfig::from_params(params)?, seed),
        Pipeline::Cets => cets::run(&cets::CetsConfig::from_params(params)?),
    }
}
