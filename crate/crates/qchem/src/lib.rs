//! File formats, dense oracles and experiment pipelines around [`qchem_core`].
//!
//! The `qchem` binary exposes the pipelines as subcommands; everything it
//! does is also callable from here.

pub mod config;
pub mod error;
pub mod io;
pub mod oracle;
pub mod pipeline;

pub use error::{CliError, ParseError};
pub use qchem_core;
