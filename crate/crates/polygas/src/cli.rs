//! Run orchestration for the command-line driver: dispatching a parsed
//! configuration to a solver, writing profiles and a run manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::{ConfigFile, SolverKind};
use crate::dvm;
use crate::error::Result;
use crate::profile::{Normalization, Profile};
use crate::solver::{self, InitialCondition};

/// Environment variable overriding the output directory.
pub const OUTPUT_DIR_ENV: &str = "POLYGAS_OUTPUT_DIR";

/// Record of a completed run.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub experiment: String,
    pub config: String,
    pub version: String,
    pub wall_time_seconds: f64,
    pub steps: usize,
    pub final_time: f64,
    pub steady: bool,
    pub snapshots: Vec<String>,
}

/// Output directory for a run: the environment override, or `fallback`.
pub fn output_dir(fallback: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => fallback.to_path_buf(),
    }
}

fn normalization_for(config: &ConfigFile) -> Option<Normalization> {
    if !config.output.normalized {
        return None;
    }
    match config.initial {
        InitialCondition::ShockStructure { mach, gamma } => {
            let ((rl, _, tl), (rr, _, tr)) = solver::rankine_hugoniot(mach, gamma);
            Some(Normalization {
                rho_l: rl,
                rho_r: rr,
                t_l: tl,
                t_r: tr,
            })
        }
        InitialCondition::ShockTube {
            rho_l,
            t_l,
            rho_r,
            t_r,
        } => Some(Normalization {
            rho_l,
            rho_r,
            t_l,
            t_r,
        }),
    }
}

/// Executes one run and writes its profile and manifest into `dir`.
pub fn execute_run(name: &str, config: &ConfigFile, dir: &Path) -> Result<RunManifest> {
    config.validate()?;
    std::fs::create_dir_all(dir)?;
    let started = Instant::now();
    let normalization = normalization_for(config);

    let (profile, steps, final_time, steady) = match config.solver {
        SolverKind::Moment => {
            let result = solver::run(&config.simulation_config())?;
            let p = Profile::from_moment_grid(&result.grid, normalization)?;
            (p, result.steps, result.t, result.steady)
        }
        SolverKind::Reference => {
            let dvm_cfg = config.dvm_config()?;
            let grid = dvm::dvm_run(&dvm_cfg)?;
            let p = Profile::from_dvm_grid(&grid, &dvm_cfg.gas, normalization)?;
            (p, 0, dvm_cfg.t_end, false)
        }
    };

    let profile_path = dir.join(&config.output.path);
    if let Some(parent) = profile_path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let comments = vec![
        format!("experiment: {name}"),
        format!("t = {final_time:.6}"),
    ];
    profile.write(&profile_path, &comments)?;

    let manifest = RunManifest {
        experiment: name.to_string(),
        config: config.to_toml(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_seconds: started.elapsed().as_secs_f64(),
        steps,
        final_time,
        steady,
        snapshots: vec![config.output.path.clone()],
    };
    let manifest_path = dir.join(format!("{name}.manifest.json"));
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).unwrap(),
    )?;
    Ok(manifest)
}
