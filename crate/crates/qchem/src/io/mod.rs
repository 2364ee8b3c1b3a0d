//! Text file formats.

mod integrals;
mod pubo;
mod table;

pub use integrals::{format_integrals, parse_integrals};
pub use pubo::{format_pubo, parse_pubo};
pub use table::{fmt_f64, parse_f64, read_table, write_table, Table};

use crate::error::CliError;
use std::path::Path;

/// Reads a whole file, attaching the path to any error.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}
