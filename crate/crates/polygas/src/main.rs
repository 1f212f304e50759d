use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polygas::cli::{execute_run, output_dir};
use polygas::config::ConfigFile;
use polygas::preset::{preset_runs, PRESET_NAMES};
use polygas::profile::{compare, Profile};

#[derive(Parser)]
#[command(name = "polygas", version, about = "1D polyatomic rarefied gas solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single simulation from a TOML configuration file.
    Run {
        config: PathBuf,
        /// Output directory (default: the config file's directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named preset experiment bundle.
    Preset {
        name: String,
        /// Output directory (default: the current directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two profiles column by column (L1 and Linf).
    Compare { a: PathBuf, b: PathBuf },
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

fn run(cli: Cli) -> polygas::Result<()> {
    match cli.command {
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config)?;
            let parsed = ConfigFile::parse(&text)?;
            let fallback = out.unwrap_or_else(|| {
                config
                    .parent()
                    .map(PathBuf::from)
                    .unwrap_or_else(|| PathBuf::from("."))
            });
            let dir = output_dir(&fallback);
            let name = config
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "run".into());
            let manifest = execute_run(&name, &parsed, &dir)?;
            println!(
                "{name}: {} steps to t = {:.6} in {:.2} s -> {}",
                manifest.steps,
                manifest.final_time,
                manifest.wall_time_seconds,
                dir.join(&manifest.snapshots[0]).display()
            );
            Ok(())
        }
        Command::Preset { name, out } => {
            let runs = preset_runs(&name)?;
            let fallback = out.unwrap_or_else(|| PathBuf::from("."));
            let dir = output_dir(&fallback).join(&name);
            println!(
                "preset {name}: {} runs (available: {})",
                runs.len(),
                PRESET_NAMES.join(", ")
            );
            for run in runs {
                let manifest = execute_run(&run.name, &run.config, &dir)?;
                println!(
                    "  {}: {} steps to t = {:.6} in {:.2} s",
                    run.name, manifest.steps, manifest.final_time, manifest.wall_time_seconds
                );
            }
            Ok(())
        }
        Command::Compare { a, b } => {
            let pa = Profile::read(&a)?;
            let pb = Profile::read(&b)?;
            let diffs = compare(&pa, &pb)?;
            println!("{:<12} {:>14} {:>14}", "column", "L1", "Linf");
            for d in diffs {
                println!("{:<12} {:>14.6e} {:>14.6e}", d.name, d.l1, d.linf);
            }
            Ok(())
        }
    }
}
