//! `gl2twist` command-line entry point.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use config::{read_config_file, Params, RunConfig};

/// Numerical verification suites for twisted GL(2) L-functions.
#[derive(Debug, Parser)]
#[command(name = "gl2twist", version)]
struct Cli {
    /// verify-delta, verify-poisson, verify-voronoi, verify-charsum-C, sweep-charsum-A,
    /// sweep-charsum-B, sweep-weil, verify-decomposition, lvalue, exponent-sweep, dump-coeffs
    command: Option<String>,
    /// JSON file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
}

fn write_output(run: &RunConfig, text: &str) -> anyhow::Result<()> {
    match &run.params.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let file = match cli.config.as_deref().map(read_config_file).transpose() {
        Ok(file) => file,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    let run = match RunConfig::resolve(cli.command, cli.params, file) {
        Ok(run) => run,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    let table = match commands::run(&run) {
        Ok(table) => table,
        Err(e) => {
            eprintln!("{}: {e}", run.command);
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = write_output(&run, &table.render(&run)) {
        eprintln!("output error: {e:#}");
        return ExitCode::from(2);
    }
    println!("PASS {}/{}", table.passed(), table.checks.len());
    if table.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
