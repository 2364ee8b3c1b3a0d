use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qchem::config::{ExperimentConfig, Pipeline};
use qchem::io::write_table;
use qchem::pipeline::{self, Report};
use qchem::CliError;

#[derive(Parser)]
#[command(
    name = "qchem",
    about = "Statevector experiments for quantum-chemistry algorithms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground-state energies of integral files by phase estimation
    Pea(Common),
    /// Wavepacket propagation on a position grid
    Dynamics(Common),
    /// Landscape and annealing sweep of the built-in lattice fold
    Fold(Common),
    /// Landscape and annealing sweep of a polynomial file
    Qubo(Common),
    /// Coherent encoding of a thermal state
    Cets(Common),
}

#[derive(Args)]
struct Common {
    /// Configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Random seed (overrides the config file)
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path; secondary tables go next to it (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sibling(out: &Path, name: &str) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{stem}.{name}.csv"))
}

fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_table(path, &report.primary)?;
            for (name, table) in &report.extra {
                write_table(&sibling(path, name), table)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let mut text = report.primary.to_csv()?;
            for (_, table) in &report.extra {
                text.push('\n');
                text.push_str(&table.to_csv()?);
            }
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))?;
        }
    }
    for note in &report.notes {
        eprintln!("{note}");
    }
    Ok(())
}

fn execute(pipeline: Pipeline, args: Common) -> Result<(), CliError> {
    let config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::empty(),
    };
    let params = config.params_for(pipeline)?;
    let seed = args.seed.or(config.seed).unwrap_or(0);
    let out = args.out.or(config.out);
    let report = pipeline::run(pipeline, params, seed)?;
    emit(&report, out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (pipeline, args) = match cli.command {
        Command::Pea(a) => (Pipeline::Pea, a),
        Command::Dynamics(a) => (Pipeline::Dynamics, a),
        Command::Fold(a) => (Pipeline::Fold, a),
        Command::Qubo(a) => (Pipeline::Qubo, a),
        Command::Cets(a) => (Pipeline::Cets, a),
    };
    match execute(pipeline, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
