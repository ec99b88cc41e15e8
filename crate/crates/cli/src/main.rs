use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hhx_cli::commands::DUAL_NUMBERS;
use hhx_cli::{execute, parse_document, read_document, run_requests, CliError, Command, Outcome, Settings};
use hhx_core::Field;

/// Exact higher-order Hochschild homology and measuring-induced maps.
#[derive(Parser)]
#[command(name = "hhx", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Global {
    /// Ground field, `rational` or `prime:p`; overrides the document.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Work with the normalized complex (the default).
    #[arg(long, global = true, conflicts_with = "unnormalized")]
    normalized: bool,
    /// Work with the full simplicial chain complex.
    #[arg(long, global = true)]
    unnormalized: bool,
    /// Truncation for built-in simplicial sets.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Write the full JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Run every validator on the document.
    Validate { document: PathBuf },
    /// Dimensions of HH^Y_n(A, M) for n ≤ n-max.
    Homology {
        document: PathBuf,
        #[arg(long)]
        space: String,
        #[arg(long)]
        algebra: String,
        /// Defaults to the regular module.
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        n_max: usize,
    },
    /// Matrices of the maps on homology induced by a measuring at t.
    Induced {
        document: PathBuf,
        /// A comodule measuring, or a measuring acting on regular modules.
        #[arg(long)]
        measuring: String,
        /// Linear combination of comodule basis names, e.g. `2*g - d`.
        #[arg(long)]
        t: String,
        #[arg(long)]
        space: String,
        #[arg(long)]
        n_max: usize,
        /// Also report the chain-level matrices.
        #[arg(long)]
        chain: bool,
    },
    /// Compare both composites of the naturality square for a simplicial map.
    Square {
        document: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long)]
        measuring: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        n_max: usize,
    },
    /// Run the requests stored in a document.
    Run { document: PathBuf },
    /// Run the bundled dual-numbers example end to end.
    Demo,
}

fn write_json(path: &Path, outcome: &Outcome) -> Result<(), CliError> {
    std::fs::write(path, outcome.report.to_json())
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let settings = Settings { field: cli.global.field, normalized: !cli.global.unnormalized, truncation: cli.global.truncation };
    let outcome = match cli.command {
        Sub::Validate { document } => execute(&read_document(&document)?, &[Command::Validate], &settings)?,
        Sub::Homology { document, space, algebra, module, n_max } => {
            let cmd = Command::Homology { space, algebra, module, n_max, normalized: None };
            execute(&read_document(&document)?, &[cmd], &settings)?
        }
        Sub::Induced { document, measuring, t, space, n_max, chain } => {
            let cmd = Command::Induced { measuring, t, space, n_max, chain, normalized: None };
            execute(&read_document(&document)?, &[cmd], &settings)?
        }
        Sub::Square { document, map, measuring, t, n_max } => {
            let cmd = Command::Square { map, measuring, t, n_max, normalized: None };
            execute(&read_document(&document)?, &[cmd], &settings)?
        }
        Sub::Run { document } => run_requests(&read_document(&document)?, &settings)?,
        Sub::Demo => run_requests(&parse_document(DUAL_NUMBERS)?, &settings)?,
    };
    if let Some(path) = &cli.global.json_out {
        write_json(path, &outcome)?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.report.render());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
