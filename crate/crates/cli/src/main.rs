mod args;
mod commands;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use args::{Cli, Command};
use commands::Status;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    configure_threads()?;
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let status = match &cli.command {
        Command::Volume(a) => commands::volume(a, &mut out),
        Command::Ratio(a) => commands::ratio(a, &mut out),
        Command::Sweep(a) => commands::sweep(a, &mut out),
        Command::Check(a) => commands::check(a, &mut out),
        Command::Ladder(a) => commands::ladder(a, &mut out),
    };
    out.flush()?;
    status
}

/// `HYPERVOL_THREADS` caps the worker pool.
fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("HYPERVOL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        commands::usage(format!(
            "HYPERVOL_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the worker pool")?;
    Ok(())
}
