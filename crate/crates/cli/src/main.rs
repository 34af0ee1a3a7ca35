mod args;
mod commands;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use args::{Cli, Command};
use commands::{Failure, Outcome, EXIT_USAGE};
use lowerset::DEFAULT_NODE_BUDGET;

const BUDGET_ENV: &str = "LOWERSET_BUDGET";

fn node_budget() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| Failure::usage(format!("{BUDGET_ENV}='{v}' is not a node count: {e}"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let budget = node_budget()?;
    let (outcome, out, points_out): (Outcome, _, _) = match &cli.command {
        Command::Count(a) => (commands::run_count(a, budget)?, a.output.out.as_deref(), None),
        Command::Enumerate(a) => (commands::run_enumerate(a)?, a.output.out.as_deref(), None),
        Command::Bounds(a) => (commands::run_bounds(a, budget)?, a.output.out.as_deref(), None),
        Command::Discretize(a) => (
            commands::run_discretize(a, budget)?,
            a.output.out.as_deref(),
            a.points_out.as_deref(),
        ),
    };
    write_to(out, &outcome.output)?;
    if let (Some(path), Some(csv)) = (points_out, &outcome.points_csv) {
        write_to(Some(path), csv)?;
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => {
                    // value errors come without a usage line
                    if !e.render().to_string().contains("Usage:") {
                        eprintln!("\n{}", Cli::command().render_usage());
                    }
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            if f.exit == EXIT_USAGE {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            ExitCode::from(f.exit)
        }
    }
}
