//! Run configuration: TOML parsing with strict keys, documented defaults
//! and conversion into solver configurations.

use serde::{Deserialize, Serialize};

use crate::dvm::DvmConfig;
use crate::error::{Error, Result};
use crate::gas::{CollisionNumber, GasModel, ViscosityLaw};
use crate::solver::{InitialCondition, SimulationConfig, StopCriterion};

/// Which solver a run drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    #[default]
    Moment,
    /// The discrete-velocity reference solver.
    Reference,
}

fn default_r() -> f64 {
    1.0
}

fn default_delta() -> f64 {
    2.0
}

fn default_viscosity() -> ViscosityLaw {
    ViscosityLaw::linear()
}

/// `[gas]` section. `r` and `delta` default to the non-dimensional
/// diatomic values 1 and 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasSection {
    #[serde(default = "default_r")]
    pub r: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    pub prandtl: f64,
    pub knudsen: f64,
    #[serde(default = "default_viscosity")]
    pub viscosity: ViscosityLaw,
    pub collision_number: CollisionNumber,
}

fn default_cfl() -> f64 {
    0.95
}

fn default_projection_substeps() -> usize {
    8
}

fn default_n_v() -> usize {
    400
}

fn default_halfwidth() -> f64 {
    8.0
}

/// `[discretization]` section. `n_v` and `halfwidth` only matter for
/// reference runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscretizationSection {
    pub m0: usize,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    #[serde(default = "default_projection_substeps")]
    pub projection_substeps: usize,
    #[serde(default = "default_n_v")]
    pub n_v: usize,
    #[serde(default = "default_halfwidth")]
    pub halfwidth: f64,
}

fn default_output_path() -> String {
    "profile.txt".into()
}

/// `[output]` section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_output_path")]
    pub path: String,
    /// Emit the normalized shock-structure columns.
    #[serde(default)]
    pub normalized: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            path: default_output_path(),
            normalized: false,
        }
    }
}

/// A full run configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub solver: SolverKind,
    pub gas: GasSection,
    pub discretization: DiscretizationSection,
    pub initial: InitialCondition,
    pub stop: StopCriterion,
    #[serde(default)]
    pub output: OutputSection,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ConfigFile =
            toml::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serialization cannot fail")
    }

    pub fn gas_model(&self) -> GasModel {
        GasModel {
            r: self.gas.r,
            delta: self.gas.delta,
            prandtl: self.gas.prandtl,
            knudsen: self.gas.knudsen,
            viscosity: self.gas.viscosity,
            collision_number: self.gas.collision_number,
        }
    }

    pub fn simulation_config(&self) -> SimulationConfig {
        SimulationConfig {
            gas: self.gas_model(),
            m0: self.discretization.m0,
            cfl: self.discretization.cfl,
            x_min: self.discretization.x_min,
            x_max: self.discretization.x_max,
            n_cells: self.discretization.n_cells,
            initial: self.initial,
            stop: self.stop,
            projection_substeps: self.discretization.projection_substeps,
        }
    }

    pub fn dvm_config(&self) -> Result<DvmConfig> {
        let StopCriterion::FinalTime { t_end } = self.stop else {
            return Err(Error::Config(
                "the reference solver only supports the final_time stop criterion".into(),
            ));
        };
        Ok(DvmConfig {
            gas: self.gas_model(),
            n_v: self.discretization.n_v,
            halfwidth: self.discretization.halfwidth,
            x_min: self.discretization.x_min,
            x_max: self.discretization.x_max,
            n_cells: self.discretization.n_cells,
            cfl: self.discretization.cfl,
            t_end,
            initial: self.initial,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.simulation_config().validate()?;
        if self.solver == SolverKind::Reference {
            self.dvm_config()?;
        }
        Ok(())
    }
}
