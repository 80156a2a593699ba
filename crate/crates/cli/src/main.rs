//! `gfusion`: analyze, dualize, Parseval-ize, prune and transform g-fusion
//! frames stored as JSON.
//!
//! Exit status: 0 success, 1 input error, 2 not a frame (or removal destroys
//! the frame), 3 frame operator too ill-conditioned to invert.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gfusion_core::generators::GeneratorSpec;
use gfusion_core::Tolerance;

use commands::{Failure, Outcome, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "gfusion", version, about = "Finite-dimensional g-fusion frame toolkit")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true, value_name = "FLOAT")]
    tol_rank: Option<f64>,
    /// Absolute bound for identity residuals.
    #[arg(long, global = true, value_name = "FLOAT")]
    tol_resid: Option<f64>,
    /// Destination of the frame file (or of the report for commands that
    /// produce no frame). Without it the frame goes to stdout and the
    /// report to stderr.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal bounds, completeness and frame-sequence diagnostics.
    Analyze { path: String },
    /// Write the canonical dual frame.
    Dual { path: String },
    /// Write the Parseval frame S^{-1/2} applied to the input.
    Parsevalize { path: String },
    /// Report what removing one member does (0-based index).
    Remove {
        path: String,
        #[arg(long)]
        index: usize,
    },
    /// Push the frame through an n x n operator.
    Transform {
        path: String,
        #[arg(long, value_name = "PATH")]
        operator: String,
    },
    /// Write a seeded random frame.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// JSON generator spec; the flags below are ignored when given.
    spec: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    ambient_dim: usize,
    #[arg(long, default_value_t = 3)]
    members: usize,
    #[arg(long, default_value_t = 2)]
    subspace_dim: usize,
    #[arg(long, default_value_t = 2)]
    codomain_dim: usize,
    #[arg(long, default_value_t = 0.5)]
    weight_lo: f64,
    #[arg(long, default_value_t = 2.0)]
    weight_hi: f64,
    /// Accept the first draw even if it is not a frame.
    #[arg(long)]
    no_ensure_frame: bool,
}

fn generator_spec(args: &GenerateArgs) -> Result<(GeneratorSpec, Vec<u8>), Failure> {
    if let Some(path) = &args.spec {
        let bytes = commands::read_input(path)?;
        let spec = serde_json::from_slice(&bytes).map_err(|e| Failure {
            message: format!("{path}: {e}"),
            exit: EXIT_INPUT,
        })?;
        return Ok((spec, bytes));
    }
    let spec = GeneratorSpec {
        weight_range: (args.weight_lo, args.weight_hi),
        ensure_frame: !args.no_ensure_frame,
        ..GeneratorSpec::uniform(
            args.seed,
            args.ambient_dim,
            args.members,
            args.subspace_dim,
            args.codomain_dim,
        )
    };
    let bytes = serde_json::to_vec(&spec).expect("spec serializes");
    Ok((spec, bytes))
}

fn tolerance(cli: &Cli) -> Result<Tolerance, Failure> {
    let d = Tolerance::default();
    Ok(Tolerance::new(
        cli.tol_rank.unwrap_or(d.rank_rel),
        cli.tol_resid.unwrap_or(d.residual_abs),
    )?)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Analyze { path } => commands::analyze(&commands::read_input(path)?, tol),
        Command::Dual { path } => commands::dual(&commands::read_input(path)?, tol),
        Command::Parsevalize { path } => {
            commands::parsevalize_cmd(&commands::read_input(path)?, tol)
        }
        Command::Remove { path, index } => {
            commands::remove(&commands::read_input(path)?, *index, tol)
        }
        Command::Transform { path, operator } => commands::transform(
            &commands::read_input(path)?,
            &commands::read_input(operator)?,
            tol,
        ),
        Command::Generate(args) => {
            let (spec, bytes) = generator_spec(args)?;
            commands::generate(&spec, &bytes, tol)
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> std::io::Result<()> {
    let rendered = if cli.json {
        outcome.report.to_json()
    } else {
        outcome.report.to_text()
    };
    match (&outcome.frame, &cli.out) {
        (Some(frame), Some(path)) => {
            std::fs::write(path, frame)?;
            std::io::stdout().write_all(rendered.as_bytes())
        }
        (Some(frame), None) => {
            std::io::stdout().write_all(frame)?;
            std::io::stderr().write_all(rendered.as_bytes())
        }
        (None, Some(path)) => std::fs::write(path, rendered),
        (None, None) => std::io::stdout().write_all(rendered.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => match emit(&cli, &outcome) {
            Ok(()) => outcome.exit,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.exit
        }
    };
    ExitCode::from(code as u8)
}
