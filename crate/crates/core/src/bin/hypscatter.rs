use clap::{Parser, ValueEnum};
use hypscatter::commands::{self, CommandError, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    Scattering,
    Zeros,
    Lengths,
    Verify,
}

/// Scattering determinants, zero distribution and length spectra of arithmetic lattices.
#[derive(Parser)]
#[command(name = "hypscatter", version)]
struct Cli {
    command: Command,
    /// sl2z, gamma0(p) or gaussian
    #[arg(long)]
    lattice: Option<String>,
    /// Second lattice for the length-spectrum comparison
    #[arg(long)]
    compare: Option<String>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    lmax: Option<f64>,
    #[arg(long = "lambda-max")]
    lambda_max: Option<f64>,
    #[arg(long = "a-max")]
    a_max: Option<usize>,
    /// double or dd
    #[arg(long)]
    precision: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Flat key = value file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CommandError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    let flags = [
        ("lattice", cli.lattice.clone()),
        ("compare", cli.compare.clone()),
        ("tmax", cli.tmax.map(|v| v.to_string())),
        ("lmax", cli.lmax.map(|v| v.to_string())),
        ("lambda_max", cli.lambda_max.map(|v| v.to_string())),
        ("a_max", cli.a_max.map(|v| v.to_string())),
        ("precision", cli.precision.clone()),
        ("out", cli.out.as_ref().map(|p| p.display().to_string())),
        ("seed", cli.seed.map(|v| v.to_string())),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, &v).map_err(CommandError::Usage)?;
        }
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(&cli).and_then(|cfg| match cli.command {
        Command::Scattering => commands::cmd_scattering(&cfg),
        Command::Zeros => commands::cmd_zeros(&cfg),
        Command::Lengths => commands::cmd_lengths(&cfg),
        Command::Verify => commands::cmd_verify(&cfg),
    });
    match result {
        Err(e @ CommandError::Usage(_)) | Err(e @ CommandError::Config { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Ok(out) => {
            for n in &out.notices {
                eprintln!("{n}");
            }
            for f in &out.files {
                println!("{}", f.display());
            }
            for f in &out.failures {
                eprintln!("FAILED: {f}");
            }
            if out.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
