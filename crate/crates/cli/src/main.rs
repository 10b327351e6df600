//! `scarf-spectrum`: bound states of the generalized trigonometric Scarf
//! potential by asymptotic iteration and tridiagonal representation.

mod commands;
mod config;
mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::json;

use commands::Table;
use config::{Flags, RunConfig};

/// Bad input that is the caller's to fix; exit status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser)]
#[command(name = "scarf-spectrum", version, about = "Bound states of the generalized trigonometric Scarf potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy levels by AIM, TRA or both.
    Spectrum(Flags),
    /// AIM levels over a grid of starting points and iteration counts.
    Plateau(Flags),
    /// Sampled wavefunction of one level.
    Wavefunction(Flags),
    /// Sampled potential.
    PotentialCurve(Flags),
    /// Recompute a published table with its parameter set.
    Tables {
        #[arg(value_enum)]
        table: Table,
        #[command(flatten)]
        flags: Flags,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let (cfg, report) = match cli.command {
        Command::Tables { table, flags } => commands::tables(table, flags.with_file()?)?,
        Command::Spectrum(f) => with_config(f, commands::spectrum)?,
        Command::Plateau(f) => with_config(f, commands::plateau)?,
        Command::Wavefunction(f) => with_config(f, commands::wavefunction)?,
        Command::PotentialCurve(f) => with_config(f, commands::potential_curve)?,
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match &cfg.out {
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            report.write(cfg.format, &mut out)?;
            out.flush()?;
        }
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut out = BufWriter::new(file);
            report.write(cfg.format, &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn with_config(
    flags: Flags,
    cmd: fn(&RunConfig) -> anyhow::Result<report::Report>,
) -> anyhow::Result<(RunConfig, report::Report)> {
    let cfg = RunConfig::resolve(flags.with_file()?)?;
    let report = cmd(&cfg)?;
    Ok((cfg, report))
}

/// 2 for bad input, 3 for numerical failure, 1 otherwise.
fn classify(e: &anyhow::Error) -> (&'static str, u8) {
    for cause in e.chain() {
        if cause.downcast_ref::<Usage>().is_some() {
            return ("usage", 2);
        }
        if let Some(c) = cause.downcast_ref::<scarf_core::Error>() {
            return if c.is_numerical() { ("numerical", 3) } else { ("validation", 2) };
        }
    }
    ("io", 1)
}

fn fail(kind: &str, code: u8, message: String) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "code": code, "message": message }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return fail("usage", 2, first);
        }
        Err(e) => {
            // help and version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // the reader went away, as with `| head`
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (kind, code) = classify(&e);
            fail(kind, code, format!("{e:#}"))
        }
    }
}
