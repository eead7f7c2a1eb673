use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use matstat_cli::commands::{execute, Cli};
use matstat_cli::{CliError, Manifest};

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let outcome = execute(&cli)?;
    let g = &cli.global;
    let body = outcome.report.render(g.format)?;
    let mut manifest = Manifest::new(std::env::args().collect(), g.threads, g.budget, g.seed, g.format);
    manifest.spec = outcome.spec;
    manifest.rows = outcome.report.rows();
    let manifest = serde_json::to_string_pretty(&manifest)? + "\n";
    match &g.out {
        Some(path) => {
            std::fs::write(path, body)?;
            std::fs::write(manifest_path(path), manifest)?;
        }
        None => {
            print!("{body}");
            eprint!("{manifest}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
