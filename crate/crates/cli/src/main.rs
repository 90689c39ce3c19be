//! `dqd`: decoherence sweeps for double-quantum-dot charge qubits.
//!
//! Each subcommand reads a config file, sweeps one axis, and writes a CSV
//! with the inputs repeated on every row. Identical config and seed produce
//! byte-identical output.

mod config;
mod sweep;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "dqd",
    about = "Phonon-induced decoherence of double-quantum-dot charge qubits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phonon absorption/emission rates, Γ and the T1/T2 timescales
    Rates(RunArgs),
    /// NOT-gate relaxation: Γ, thermal populations and the closed-form error
    GateNot(RunArgs),
    /// π-phase gate dephasing: B²(t) and the closed-form error
    GatePhase(RunArgs),
    /// Worst-case gate error: optimizer against the closed form, per row
    Measure(RunArgs),
    /// Multi-qubit register additivity of the worst-case error
    Register(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the key = value config file
    #[arg(long)]
    config: PathBuf,
    /// Override optimizer.rng_seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override output_path from the config
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Rates(a) => ("rates", a),
        Command::GateNot(a) => ("gate-not", a),
        Command::GatePhase(a) => ("gate-phase", a),
        Command::Measure(a) => ("measure", a),
        Command::Register(a) => ("register", a),
    };

    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("reading config {}", args.config.display()))?;
    let mut run_config = config::parse_config(&text)
        .with_context(|| format!("parsing config {}", args.config.display()))?;
    if let Some(seed) = args.seed {
        run_config.optimizer.rng_seed = seed;
    }

    if run_config.geometry.has_strong_overlap() {
        eprintln!(
            "warning: separation/dot-size ratio L/a = {:.3} <= 3; dot wavefunctions overlap strongly and the weak-overlap model degrades",
            run_config.geometry.separation_l() / run_config.geometry.dot_size_a()
        );
    }

    let table = sweep::run_subcommand(name, &run_config)?;

    let out_path = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&run_config.output_path));
    std::fs::write(&out_path, table.to_csv())
        .with_context(|| format!("writing {}", out_path.display()))?;
    eprintln!("wrote {} rows to {}", table.rows.len(), out_path.display());
    Ok(())
}
