mod args;
mod artifact;
mod commands;
mod error;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use artifact::{write_atomic, Artifact};
use commands::{Command, Outcome};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "cherednik", version, args_conflicts_with_subcommands = true, about = "Workbench for Cherednik algebras, Hecke algebras and Calogero-Moser systems")]
struct Cli {
    /// Run the acceptance suite and aggregate its pass/fail lines.
    #[arg(long)]
    selftest: bool,
    /// With --selftest, run only these criteria, e.g. `2,4`.
    #[arg(long, value_delimiter = ',', requires = "selftest")]
    only: Vec<usize>,
    /// Artifact path; defaults to `<subcommand>.jsonl` or `<subcommand>.csv`.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(passed) => {
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("cherednik: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    if let Some(n) = args::workers_from_env()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let (name, ext, result) = if cli.selftest {
        ("selftest", "jsonl", commands::selftest(&cli.only))
    } else if let Some(cmd) = &cli.command {
        (cmd.name(), cmd.extension(), cmd.run())
    } else {
        return Err(CliError::Config("give a subcommand or --selftest; see --help".into()));
    };
    let path = cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.{ext}")));
    match result {
        Ok(outcome) => {
            write_artifact(&path, &outcome.artifact)?;
            report(&outcome, &path);
            Ok(outcome.passed)
        }
        Err(CliError::Compute(e)) => {
            // the failure itself is the witness
            let failed = Artifact::json(name, vec![json!({"status": "fail", "error": e.to_string()})]);
            write_artifact(&path, &failed)?;
            println!("{name}: computation failed: {e}");
            println!("artifact: {}", path.display());
            println!("FAIL");
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

fn write_artifact(path: &Path, artifact: &Artifact) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let bytes = artifact.render().map_err(io)?;
    write_atomic(path, &bytes).map_err(io)
}

fn report(outcome: &Outcome, path: &Path) {
    for line in &outcome.summary {
        println!("{line}");
    }
    println!("artifact: {}", path.display());
    println!("{}", if outcome.passed { "PASS" } else { "FAIL" });
}
