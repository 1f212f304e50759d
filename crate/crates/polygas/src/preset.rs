//! Named experiment bundles reproducing the published figure families.

use crate::config::{ConfigFile, DiscretizationSection, GasSection, OutputSection, SolverKind};
use crate::error::{Error, Result};
use crate::gas::{CollisionNumber, ViscosityLaw};
use crate::solver::{InitialCondition, StopCriterion};

/// A single run within a preset.
#[derive(Debug, Clone)]
pub struct NamedRun {
    pub name: String,
    pub config: ConfigFile,
}

pub const PRESET_NAMES: [&str; 4] = [
    "shock-tube-convergence",
    "bgk-vs-esbgk",
    "monatomic-limit",
    "nitrogen-shock",
];

fn shock_tube_gas(knudsen: f64, prandtl: f64, z: f64) -> GasSection {
    GasSection {
        r: 1.0,
        delta: 2.0,
        prandtl,
        knudsen,
        viscosity: ViscosityLaw::linear(),
        collision_number: CollisionNumber::Constant { value: z },
    }
}

fn shock_tube_discretization(m0: usize, n_cells: usize) -> DiscretizationSection {
    DiscretizationSection {
        m0,
        cfl: 0.95,
        x_min: -2.0,
        x_max: 2.0,
        n_cells,
        projection_substeps: 8,
        n_v: 400,
        halfwidth: 8.0,
    }
}

const SHOCK_TUBE_INITIAL: InitialCondition = InitialCondition::ShockTube {
    rho_l: 7.0,
    t_l: 1.0,
    rho_r: 1.0,
    t_r: 1.0,
};

fn shock_tube_run(
    name: String,
    solver: SolverKind,
    gas: GasSection,
    m0: usize,
    n_cells: usize,
) -> NamedRun {
    let config = ConfigFile {
        solver,
        gas,
        discretization: shock_tube_discretization(m0, n_cells),
        initial: SHOCK_TUBE_INITIAL,
        stop: StopCriterion::FinalTime { t_end: 0.3 },
        output: OutputSection {
            path: format!("{name}.txt"),
            normalized: false,
        },
    };
    NamedRun { name, config }
}

/// All runs of the named preset.
pub fn preset_runs(name: &str) -> Result<Vec<NamedRun>> {
    match name {
        "shock-tube-convergence" => {
            // moment-order sweeps at three Knudsen numbers, each paired
            // with a discrete-velocity reference run
            let mut runs = Vec::new();
            for &kn in &[0.05, 0.5, 5.0] {
                for m0 in 3..=6 {
                    runs.push(shock_tube_run(
                        format!("shock-tube-kn{kn}-m{m0}"),
                        SolverKind::Moment,
                        shock_tube_gas(kn, 0.72, 5.0),
                        m0,
                        400,
                    ));
                }
                runs.push(shock_tube_run(
                    format!("shock-tube-kn{kn}-reference"),
                    SolverKind::Reference,
                    shock_tube_gas(kn, 0.72, 5.0),
                    3,
                    400,
                ));
            }
            Ok(runs)
        }
        "bgk-vs-esbgk" => Ok(vec![
            shock_tube_run(
                "esbgk-kn0.05-m5".into(),
                SolverKind::Moment,
                shock_tube_gas(0.05, 0.72, 5.0),
                5,
                400,
            ),
            shock_tube_run(
                "bgk-kn0.05-m5".into(),
                SolverKind::Moment,
                shock_tube_gas(0.05, 1.0, 1.0),
                5,
                400,
            ),
        ]),
        "monatomic-limit" => {
            let runs = [1.0, 10.0, 100.0, 1000.0]
                .iter()
                .map(|&z| {
                    shock_tube_run(
                        format!("monatomic-z{z}"),
                        SolverKind::Moment,
                        shock_tube_gas(0.01, 2.0 / 3.0, z),
                        5,
                        400,
                    )
                })
                .collect();
            Ok(runs)
        }
        "nitrogen-shock" => {
            let runs = [1.53, 1.7, 2.0, 3.2, 3.8, 6.1]
                .iter()
                .map(|&mach| {
                    let name = format!("nitrogen-ma{mach}");
                    let config = ConfigFile {
                        solver: SolverKind::Moment,
                        gas: GasSection {
                            r: 1.0,
                            delta: 2.0,
                            prandtl: 0.72,
                            knudsen: 0.1,
                            viscosity: ViscosityLaw::nitrogen(),
                            collision_number: CollisionNumber::nitrogen(),
                        },
                        discretization: DiscretizationSection {
                            m0: 3,
                            cfl: 0.95,
                            x_min: -1.5,
                            x_max: 1.5,
                            n_cells: 600,
                            projection_substeps: 8,
                            n_v: 400,
                            halfwidth: 8.0,
                        },
                        initial: InitialCondition::ShockStructure { mach, gamma: 1.4 },
                        stop: StopCriterion::SteadyState {
                            threshold: 1e-6,
                            sustain: 100,
                            max_time: 50.0,
                        },
                        output: OutputSection {
                            path: format!("{name}.txt"),
                            normalized: true,
                        },
                    };
                    NamedRun { name, config }
                })
                .collect();
            Ok(runs)
        }
        other => Err(Error::Config(format!(
            "unknown preset '{other}'; available: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_validate() {
        for name in PRESET_NAMES {
            let runs = preset_runs(name).unwrap();
            assert!(!runs.is_empty());
            for run in &runs {
                run.config.validate().unwrap();
                // the config must survive a serialization round trip
                let text = run.config.to_toml();
                let back = ConfigFile::parse(&text).unwrap();
                assert_eq!(run.config, back);
            }
        }
    }

    #[test]
    fn unknown_preset_rejected() {
        assert!(preset_runs("no-such-preset").is_err());
    }

    #[test]
    fn preset_shapes() {
        assert_eq!(preset_runs("shock-tube-convergence").unwrap().len(), 15);
        assert_eq!(preset_runs("bgk-vs-esbgk").unwrap().len(), 2);
        assert_eq!(preset_runs("monatomic-limit").unwrap().len(), 4);
        let nitrogen = preset_runs("nitrogen-shock").unwrap();
        assert_eq!(nitrogen.len(), 6);
        assert!(nitrogen.iter().all(|r| r.config.output.normalized));
    }
}
