//! 1D finite-volume driver: initialization, linear reconstruction with
//! minmod limiting, HLL flux with the gradient closure, CFL control and
//! operator splitting with the collision step.
//!
//! Cells store normal-representation coefficient sets. All interface work
//! happens in a common frame (the mean of the two adjacent frames); flux
//! sets are projected back into each cell's frame before the update, which
//! keeps the scheme conservative up to projection integrator error.

use serde::{Deserialize, Serialize};

use crate::basis::hermite_max_root;
use crate::closure::close_with_gradient;
use crate::error::{Error, Result};
use crate::esbgk::{collision_step, CollisionParameters};
use crate::gas::GasModel;
use crate::moment::{self, ExpansionFrame, MomentCoefficients};
use crate::projection;

/// Uniform 1D grid of moment states.
#[derive(Debug, Clone)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
    pub cells: Vec<MomentCoefficients>,
}

impl Grid1D {
    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }
}

/// Initial data selection.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    /// Two equilibria at rest separated at x = 0.
    ShockTube {
        rho_l: f64,
        t_l: f64,
        rho_r: f64,
        t_r: f64,
    },
    /// Riemann data from the Rankine-Hugoniot relations for a normal
    /// shock at the given Mach number.
    ShockStructure { mach: f64, gamma: f64 },
}

/// Stopping rule for the time loop.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StopCriterion {
    FinalTime {
        t_end: f64,
    },
    /// Stop once the L1 density change per unit time stays below
    /// `threshold` for `sustain` consecutive steps.
    SteadyState {
        threshold: f64,
        sustain: usize,
        max_time: f64,
    },
}

/// Everything needed for one run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SimulationConfig {
    pub gas: GasModel,
    pub m0: usize,
    pub cfl: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub initial: InitialCondition,
    pub stop: StopCriterion,
    /// Base RK4 substep count for frame projections; scaled up with the
    /// size of the frame change.
    pub projection_substeps: usize,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        self.gas.validate()?;
        if self.m0 < 3 {
            return Err(Error::Config(format!(
                "M0 = {} is too small; the closure needs M0 >= 3",
                self.m0
            )));
        }
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::Config(format!(
                "CFL = {} must lie in (0, 1)",
                self.cfl
            )));
        }
        if self.n_cells < 4 {
            return Err(Error::Config(format!(
                "n_cells = {} must be at least 4",
                self.n_cells
            )));
        }
        if self.x_max <= self.x_min {
            return Err(Error::Config("x_max must exceed x_min".into()));
        }
        match self.initial {
            InitialCondition::ShockTube {
                rho_l,
                t_l,
                rho_r,
                t_r,
            } => {
                if rho_l <= 0.0 || rho_r <= 0.0 || t_l <= 0.0 || t_r <= 0.0 {
                    return Err(Error::Config(
                        "shock tube densities and temperatures must be positive".into(),
                    ));
                }
            }
            InitialCondition::ShockStructure { mach, gamma } => {
                if mach <= 1.0 {
                    return Err(Error::Config(format!("Mach number {mach} must exceed 1")));
                }
                if gamma <= 1.0 {
                    return Err(Error::Config(format!("gamma = {gamma} must exceed 1")));
                }
            }
        }
        match self.stop {
            StopCriterion::FinalTime { t_end } if t_end <= 0.0 => {
                return Err(Error::Config("t_end must be positive".into()));
            }
            StopCriterion::SteadyState {
                threshold,
                sustain,
                max_time,
            } => {
                if threshold <= 0.0 || sustain == 0 || max_time <= 0.0 {
                    return Err(Error::Config("invalid steady-state criterion".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// The left/right Riemann states of a shock-structure run, from the
/// Rankine-Hugoniot relations.
pub fn rankine_hugoniot(mach: f64, gamma: f64) -> ((f64, f64, f64), (f64, f64, f64)) {
    let rho_l = 1.0;
    let u_l = gamma.sqrt() * mach;
    let t_l = 1.0;
    let rho_r = (gamma + 1.0) * mach * mach / ((gamma - 1.0) * mach * mach + 2.0);
    let u_r = rho_l / rho_r * u_l;
    let t_r = (2.0 * gamma * mach * mach - (gamma - 1.0)) / ((gamma + 1.0) * rho_r);
    ((rho_l, u_l, t_l), (rho_r, u_r, t_r))
}

fn equilibrium_cell(gas: &GasModel, m0: usize, rho: f64, u1: f64, t: f64) -> MomentCoefficients {
    let frame = ExpansionFrame {
        u: [u1, 0.0, 0.0],
        t_tr: t,
        t_int: t,
        r: gas.r,
        delta: gas.delta,
    };
    MomentCoefficients::equilibrium(frame, rho, m0)
}

/// Grid of equilibrium cells from the configured initial condition.
pub fn init_grid(config: &SimulationConfig) -> Result<Grid1D> {
    config.validate()?;
    let dx = (config.x_max - config.x_min) / config.n_cells as f64;
    let mut cells = Vec::with_capacity(config.n_cells);
    for i in 0..config.n_cells {
        let x = config.x_min + (i as f64 + 0.5) * dx;
        let cell = match config.initial {
            InitialCondition::ShockTube {
                rho_l,
                t_l,
                rho_r,
                t_r,
            } => {
                if x < 0.0 {
                    equilibrium_cell(&config.gas, config.m0, rho_l, 0.0, t_l)
                } else {
                    equilibrium_cell(&config.gas, config.m0, rho_r, 0.0, t_r)
                }
            }
            InitialCondition::ShockStructure { mach, gamma } => {
                let ((rl, ul, tl), (rr, ur, tr)) = rankine_hugoniot(mach, gamma);
                if x < 0.0 {
                    equilibrium_cell(&config.gas, config.m0, rl, ul, tl)
                } else {
                    equilibrium_cell(&config.gas, config.m0, rr, ur, tr)
                }
            }
        };
        cells.push(cell);
    }
    Ok(Grid1D {
        x_min: config.x_min,
        x_max: config.x_max,
        dx,
        cells,
    })
}

fn cell_epsilon(gas: &GasModel, cell: &MomentCoefficients) -> f64 {
    let rho = cell.get0([0, 0, 0]);
    let t_eq = gas.t_eq(cell.frame.t_tr, cell.frame.t_int);
    gas.relaxation_time(rho, t_eq)
}

/// Largest stable time step from the CFL condition.
pub fn compute_dt(grid: &Grid1D, config: &SimulationConfig, c_m0: f64) -> Result<f64> {
    let mut max_rate: f64 = 0.0;
    for cell in &grid.cells {
        let f = &cell.frame;
        let speed = f.u[0].abs() + c_m0 * f.rt_tr().sqrt();
        let eps = cell_epsilon(&config.gas, cell);
        let rate = speed / grid.dx
            + 2.0 * (config.m0 as f64 + 1.0) / (grid.dx * grid.dx) * eps * f.rt_tr();
        if !rate.is_finite() {
            return Err(Error::Numerical(
                "non-finite CFL rate; state diverged".into(),
            ));
        }
        max_rate = max_rate.max(rate);
    }
    Ok(0.5 * config.cfl / max_rate)
}

fn mean_frame(a: &ExpansionFrame, b: &ExpansionFrame) -> ExpansionFrame {
    ExpansionFrame {
        u: [
            0.5 * (a.u[0] + b.u[0]),
            0.5 * (a.u[1] + b.u[1]),
            0.5 * (a.u[2] + b.u[2]),
        ],
        t_tr: 0.5 * (a.t_tr + b.t_tr),
        t_int: 0.5 * (a.t_int + b.t_int),
        r: a.r,
        delta: a.delta,
    }
}

/// RK4 substep count scaled with the size of the frame change so small
/// projections stay cheap and large ones stay accurate.
fn adaptive_substeps(src: &ExpansionFrame, tgt: &ExpansionFrame, base: usize) -> usize {
    let vs = src.rt_tr().sqrt();
    let size = (src.u[0] - tgt.u[0]).abs() / vs
        + (src.t_tr - tgt.t_tr).abs() / src.t_tr
        + (src.t_int - tgt.t_int).abs() / src.t_int;
    let scaled = (base as f64 * (1.0 + 4.0 * size)).ceil() as usize;
    scaled.min(8 * base)
}

fn project(
    coeffs: &MomentCoefficients,
    target: ExpansionFrame,
    base_substeps: usize,
) -> Result<MomentCoefficients> {
    let n = adaptive_substeps(&coeffs.frame, &target, base_substeps);
    projection::reexpand(coeffs, target, n)
}

fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

/// One transport step: reconstruction, closure, HLL fluxes, update and
/// re-normalization. Returns the new grid.
pub fn hll_step(grid: &Grid1D, config: &SimulationConfig, dt: f64, c_m0: f64) -> Result<Grid1D> {
    let n = grid.cells.len();
    let subs = config.projection_substeps;
    // Ghost cells: shock-structure runs pin the ghosts to the far-field
    // Rankine-Hugoniot equilibria (the downstream state is subsonic, and a
    // zero-gradient outflow there lets the whole profile drift); shock
    // tubes use zero-gradient ghosts.
    let ghost = match config.initial {
        InitialCondition::ShockStructure { mach, gamma } => {
            let ((rl, ul, tl), (rr, ur, tr)) = rankine_hugoniot(mach, gamma);
            Some((
                equilibrium_cell(&config.gas, config.m0, rl, ul, tl),
                equilibrium_cell(&config.gas, config.m0, rr, ur, tr),
            ))
        }
        InitialCondition::ShockTube { .. } => None,
    };
    let cell_at = |i: isize| -> &MomentCoefficients {
        if i < 0 {
            match &ghost {
                Some((left, _)) => left,
                None => &grid.cells[0],
            }
        } else if i >= n as isize {
            match &ghost {
                Some((_, right)) => right,
                None => &grid.cells[n - 1],
            }
        } else {
            &grid.cells[i as usize]
        }
    };

    // fluxes[i] sits between cells i-1 and i, in its own common frame
    let mut fluxes: Vec<MomentCoefficients> = Vec::with_capacity(n + 1);
    for i in 0..=n as isize {
        let left = cell_at(i - 1);
        let right = cell_at(i);
        let frame = mean_frame(&left.frame, &right.frame);

        let ll = project(cell_at(i - 2), frame, subs)?;
        let l = project(left, frame, subs)?;
        let r = project(right, frame, subs)?;
        let rr = project(cell_at(i + 1), frame, subs)?;

        let mut f_left = l.clone();
        let mut f_right = r.clone();
        for (dst, (&a, (&b, &c))) in f_left
            .data0
            .iter_mut()
            .zip(ll.data0.iter().zip(l.data0.iter().zip(r.data0.iter())))
        {
            *dst = b + 0.5 * minmod(b - a, c - b);
        }
        for (dst, (&a, (&b, &c))) in f_left
            .data1
            .iter_mut()
            .zip(ll.data1.iter().zip(l.data1.iter().zip(r.data1.iter())))
        {
            *dst = b + 0.5 * minmod(b - a, c - b);
        }
        for (dst, (&a, (&b, &c))) in f_right
            .data0
            .iter_mut()
            .zip(l.data0.iter().zip(r.data0.iter().zip(rr.data0.iter())))
        {
            *dst = b - 0.5 * minmod(b - a, c - b);
        }
        for (dst, (&a, (&b, &c))) in f_right
            .data1
            .iter_mut()
            .zip(l.data1.iter().zip(r.data1.iter().zip(rr.data1.iter())))
        {
            *dst = b - 0.5 * minmod(b - a, c - b);
        }

        // interface gradient for the closure, shared by both sides
        let grad = r.linear_comb(1.0 / grid.dx, &l, -1.0 / grid.dx);
        let eps_l = cell_epsilon(&config.gas, left);
        let eps_r = cell_epsilon(&config.gas, right);
        let closed_l = close_with_gradient(&f_left, &grad, eps_l);
        let closed_r = close_with_gradient(&f_right, &grad, eps_r);

        let (_, u_l, t_l, _) = moment::recover_basic(&f_left)
            .map_err(|e| Error::InvalidState(format!("left state at interface {i}: {e}")))?;
        let (_, u_r, t_r, _) = moment::recover_basic(&f_right)
            .map_err(|e| Error::InvalidState(format!("right state at interface {i}: {e}")))?;
        let r_gas = config.gas.r;
        let lam_minus =
            (u_l[0] - c_m0 * (r_gas * t_l).sqrt()).min(u_r[0] - c_m0 * (r_gas * t_r).sqrt());
        let lam_plus =
            (u_l[0] + c_m0 * (r_gas * t_l).sqrt()).max(u_r[0] + c_m0 * (r_gas * t_r).sqrt());

        let flux = if lam_minus >= 0.0 {
            projection::multiply_by_xi(&closed_l, 0)
        } else if lam_plus <= 0.0 {
            projection::multiply_by_xi(&closed_r, 0)
        } else {
            let xi_l = projection::multiply_by_xi(&closed_l, 0);
            let xi_r = projection::multiply_by_xi(&closed_r, 0);
            let span = lam_plus - lam_minus;
            let mut flux = xi_l.linear_comb(lam_plus / span, &xi_r, -lam_minus / span);
            let jump = closed_r
                .linear_comb(1.0, &closed_l, -1.0)
                .resized(flux.m0());
            flux = flux.linear_comb(1.0, &jump, lam_minus * lam_plus / span);
            flux
        };
        // only degrees <= M0 enter the update; the projection couples
        // downward in degree so truncating first is exact
        fluxes.push(flux.resized(config.m0));
    }

    let mut new_cells = Vec::with_capacity(n);
    for (i, cell) in grid.cells.iter().enumerate() {
        let g_left = project(&fluxes[i], cell.frame, subs)?;
        let g_right = project(&fluxes[i + 1], cell.frame, subs)?;
        let mut updated = cell.clone();
        let scale = dt / grid.dx;
        updated = updated.linear_comb(1.0, &g_right, -scale);
        updated = updated.linear_comb(1.0, &g_left, scale);
        let normalized = moment::normalize_with_substeps(&updated, subs).map_err(|e| {
            Error::InvalidState(format!(
                "cell {i} (x = {:.4}) after transport: {e}",
                grid.cell_center(i)
            ))
        })?;
        new_cells.push(normalized);
    }
    Ok(Grid1D {
        cells: new_cells,
        ..*grid
    })
}

/// Collision step applied to every cell.
pub fn collision_sweep(grid: &Grid1D, config: &SimulationConfig, dt: f64) -> Result<Grid1D> {
    let mut new_cells = Vec::with_capacity(grid.cells.len());
    for (i, cell) in grid.cells.iter().enumerate() {
        let eps = cell_epsilon(&config.gas, cell);
        let z = config
            .gas
            .collision_number
            .evaluate(cell.frame.t_tr, cell.frame.t_int);
        let params = CollisionParameters {
            prandtl: config.gas.prandtl,
            z,
        };
        let stepped = collision_step(cell, &params, eps, dt).map_err(|e| {
            Error::InvalidState(format!(
                "cell {i} (x = {:.4}) in collision: {e}",
                grid.cell_center(i)
            ))
        })?;
        new_cells.push(stepped);
    }
    Ok(Grid1D {
        cells: new_cells,
        ..*grid
    })
}

/// Result of a completed run.
#[derive(Debug)]
pub struct RunResult {
    pub grid: Grid1D,
    pub t: f64,
    pub steps: usize,
    pub steady: bool,
}

/// Runs the configured simulation to completion, calling `observer` after
/// every accepted step.
pub fn run_with_observer(
    config: &SimulationConfig,
    mut observer: impl FnMut(usize, f64, &Grid1D),
) -> Result<RunResult> {
    config.validate()?;
    let mut grid = init_grid(config)?;
    let c_m0 = hermite_max_root(config.m0)?;
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut calm_streak = 0usize;
    loop {
        let (t_limit, steady_mode) = match config.stop {
            StopCriterion::FinalTime { t_end } => (t_end, false),
            StopCriterion::SteadyState { max_time, .. } => (max_time, true),
        };
        if t >= t_limit {
            return Ok(RunResult {
                grid,
                t,
                steps,
                steady: false,
            });
        }
        let mut dt = compute_dt(&grid, config, c_m0)?;
        if t + dt > t_limit {
            dt = t_limit - t;
        }
        let rho_before: Vec<f64> = grid.cells.iter().map(|c| c.get0([0, 0, 0])).collect();
        grid = hll_step(&grid, config, dt, c_m0)?;
        grid = collision_sweep(&grid, config, dt)?;
        t += dt;
        steps += 1;
        observer(steps, t, &grid);

        if steady_mode {
            let change: f64 = grid
                .cells
                .iter()
                .zip(&rho_before)
                .map(|(c, r0)| (c.get0([0, 0, 0]) - r0).abs())
                .sum::<f64>()
                * grid.dx
                / dt;
            if let StopCriterion::SteadyState {
                threshold, sustain, ..
            } = config.stop
            {
                if change < threshold {
                    calm_streak += 1;
                    if calm_streak >= sustain {
                        return Ok(RunResult {
                            grid,
                            t,
                            steps,
                            steady: true,
                        });
                    }
                } else {
                    calm_streak = 0;
                }
            }
        }
    }
}

pub fn run(config: &SimulationConfig) -> Result<RunResult> {
    run_with_observer(config, |_, _, _| {})
}

/// Totals of the conserved quantities over the grid (mass, x-momentum,
/// total energy), each multiplied by `dx`.
pub fn conserved_totals(grid: &Grid1D) -> (f64, f64, f64) {
    let mut mass = 0.0;
    let mut momentum = 0.0;
    let mut energy = 0.0;
    for cell in &grid.cells {
        let f = &cell.frame;
        let rho = cell.get0([0, 0, 0]);
        mass += rho;
        momentum += rho * f.u[0];
        let u2 = f.u[0] * f.u[0] + f.u[1] * f.u[1] + f.u[2] * f.u[2];
        energy += 0.5 * rho * u2 + 1.5 * rho * f.rt_tr() + 0.5 * f.delta * rho * f.rt_int();
    }
    (mass * grid.dx, momentum * grid.dx, energy * grid.dx)
}
