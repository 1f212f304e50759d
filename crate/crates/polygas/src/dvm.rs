//! Reduced discrete-velocity reference solver for the diatomic gas.
//!
//! Integrating the kinetic equation against 1, (xi2^2 + xi3^2)/2 and I
//! over (xi2, xi3, I) leaves three reduced distributions of xi1 alone:
//!
//!   g  = int f d(xi2) d(xi3) dI
//!   h1 = int (xi2^2 + xi3^2)/2 f d(xi2) d(xi3) dI
//!   h2 = int I f d(xi2) d(xi3) dI        (delta = 2)
//!
//! Each satisfies a 1D transport-relaxation equation whose target is the
//! corresponding reduction of the anisotropic Gaussian. In all flows
//! handled here u2 = u3 = 0 and the pressure tensor is diagonal with
//! Theta_22 = Theta_33, so the reduced targets are
//!
//!   G_g  = rho / sqrt(2 pi T11) exp(-(xi1 - u1)^2 / (2 T11))
//!   G_h1 = T22 * G_g
//!   G_h2 = R T_rel * G_g
//!
//! with T11, T22 the axial and transverse entries of the Gaussian tensor
//! and T_rel the relaxation temperature. The collision substep is an
//! exact exponential toward the midpoint-in-time target; a quadratic
//! multiplicative correction on G_g pins its lattice moments so the
//! substep conserves discrete mass, momentum and total energy.
//! Transport is first-order upwind. This solver is a validation oracle,
//! not a production path.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::solver::{rankine_hugoniot, InitialCondition};

/// Uniform velocity lattice.
#[derive(Debug, Clone)]
pub struct VelocityLattice {
    pub nodes: Vec<f64>,
    pub dv: f64,
}

impl VelocityLattice {
    /// `n_v` nodes centered on `u_ref` spanning `halfwidth * sqrt(R T_ref)`
    /// on each side.
    pub fn new(u_ref: f64, rt_ref: f64, halfwidth: f64, n_v: usize) -> Self {
        assert!(n_v >= 8);
        let lo = u_ref - halfwidth * rt_ref.sqrt();
        let hi = u_ref + halfwidth * rt_ref.sqrt();
        let dv = (hi - lo) / n_v as f64;
        let nodes = (0..n_v).map(|i| lo + (i as f64 + 0.5) * dv).collect();
        Self { nodes, dv }
    }

    pub fn max_speed(&self) -> f64 {
        self.nodes.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}

/// Reduced distributions of one spatial cell.
#[derive(Debug, Clone)]
pub struct ReducedDistribution {
    pub g: Vec<f64>,
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
}

/// Macroscopic fields of a reduced cell.
#[derive(Debug, Clone, Copy)]
pub struct ReducedMacro {
    pub rho: f64,
    pub u1: f64,
    pub t_tr: f64,
    pub t_int: f64,
    pub t_eq: f64,
    /// Axial pressure tensor entry Theta_11.
    pub theta11: f64,
}

/// Lattice-quadrature recovery of the macroscopic fields.
pub fn reduce_macroscopic(
    lattice: &VelocityLattice,
    cell: &ReducedDistribution,
    gas: &GasModel,
) -> Result<ReducedMacro> {
    let dv = lattice.dv;
    let mut rho = 0.0;
    let mut mom = 0.0;
    for (&v, &g) in lattice.nodes.iter().zip(&cell.g) {
        rho += g * dv;
        mom += v * g * dv;
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidState(format!(
            "reduced density {rho} not positive"
        )));
    }
    let u1 = mom / rho;
    let mut theta11 = 0.0;
    let mut e_trans = 0.0;
    let mut e_int = 0.0;
    for i in 0..lattice.nodes.len() {
        let c = lattice.nodes[i] - u1;
        theta11 += c * c * cell.g[i] * dv;
        e_trans += (0.5 * c * c * cell.g[i] + cell.h1[i]) * dv;
        e_int += cell.h2[i] * dv;
    }
    let t_tr = 2.0 * e_trans / (3.0 * rho * gas.r);
    let t_int = e_int / (rho * gas.r);
    if !(t_tr > 0.0) || !(t_int > 0.0) {
        return Err(Error::InvalidState(format!(
            "reduced temperatures not positive: T_tr = {t_tr}, T_int = {t_int}"
        )));
    }
    let t_eq = gas.t_eq(t_tr, t_int);
    Ok(ReducedMacro {
        rho,
        u1,
        t_tr,
        t_int,
        t_eq,
        theta11,
    })
}

/// Discretized reduced equilibrium `(rho, u1, T)`.
pub fn reduced_equilibrium(
    lattice: &VelocityLattice,
    gas: &GasModel,
    rho: f64,
    u1: f64,
    t: f64,
) -> ReducedDistribution {
    let rt = gas.r * t;
    let g: Vec<f64> = lattice
        .nodes
        .iter()
        .map(|&v| {
            rho / (2.0 * std::f64::consts::PI * rt).sqrt()
                * (-(v - u1) * (v - u1) / (2.0 * rt)).exp()
        })
        .collect();
    let h1 = g.iter().map(|&x| rt * x).collect();
    let h2 = g.iter().map(|&x| rt * x).collect();
    ReducedDistribution { g, h1, h2 }
}

/// Reduced Gaussian targets for the given macroscopic state, with the
/// quadratic lattice-moment correction applied to `G_g`.
fn reduced_targets(
    lattice: &VelocityLattice,
    mac: &ReducedMacro,
    gas: &GasModel,
    prandtl: f64,
    z: f64,
) -> Result<ReducedDistribution> {
    let r = gas.r;
    let teq = mac.t_eq;
    // axial and transverse Gaussian tensor entries; Theta_22 = Theta_33
    // follows from the trace identity 3 rho R T_tr = Theta_11 + 2 Theta_22
    let theta22 = (3.0 * mac.rho * r * mac.t_tr - mac.theta11) / 2.0;
    let t11 = (1.0 - 1.0 / prandtl) * (mac.theta11 / mac.rho - r * mac.t_tr)
        + r * mac.t_tr
        + r * (teq - mac.t_tr) / z;
    let t22 = (1.0 - 1.0 / prandtl) * (theta22 / mac.rho - r * mac.t_tr)
        + r * mac.t_tr
        + r * (teq - mac.t_tr) / z;
    if t11 <= 0.0 || t22 <= 0.0 {
        return Err(Error::TensorNotSpd(format!(
            "reduced Gaussian tensor entries T11 = {t11}, T22 = {t22}"
        )));
    }
    let rt_rel = r * (teq / z + (1.0 - 1.0 / z) * mac.t_int);

    let raw: Vec<f64> = lattice
        .nodes
        .iter()
        .map(|&v| {
            mac.rho / (2.0 * std::f64::consts::PI * t11).sqrt()
                * (-(v - mac.u1) * (v - mac.u1) / (2.0 * t11)).exp()
        })
        .collect();

    // quadratic correction (a + b xi + c xi^2) pinning the lattice moments
    // of G_g to the continuous values (rho, rho u1, rho (u1^2 + T11))
    let dv = lattice.dv;
    let mut s = [0.0f64; 5];
    let mut rhs_vec = [0.0f64; 3];
    for (&v, &gv) in lattice.nodes.iter().zip(&raw) {
        let mut p = gv * dv;
        for sk in s.iter_mut() {
            *sk += p;
            p *= v;
        }
    }
    rhs_vec[0] = mac.rho;
    rhs_vec[1] = mac.rho * mac.u1;
    rhs_vec[2] = mac.rho * (mac.u1 * mac.u1 + t11);
    let m = Matrix3::new(s[0], s[1], s[2], s[1], s[2], s[3], s[2], s[3], s[4]);
    let rhs = Vector3::new(rhs_vec[0], rhs_vec[1], rhs_vec[2]);
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("singular lattice moment system".into()))?;
    let g: Vec<f64> = lattice
        .nodes
        .iter()
        .zip(&raw)
        .map(|(&v, &gv)| gv * (sol[0] + sol[1] * v + sol[2] * v * v))
        .collect();
    // transverse and internal energies ride on the corrected g, so their
    // lattice sums match rho T22 and rho R T_rel exactly
    let h1 = g.iter().map(|&x| t22 * x).collect();
    let h2 = g.iter().map(|&x| rt_rel * x).collect();
    Ok(ReducedDistribution { g, h1, h2 })
}

/// Exact-exponential collision substep toward the midpoint target.
pub fn dvm_collision_step(
    lattice: &VelocityLattice,
    cell: &ReducedDistribution,
    gas: &GasModel,
    dt: f64,
) -> Result<ReducedDistribution> {
    let mac = reduce_macroscopic(lattice, cell, gas)?;
    let z = gas.collision_number.evaluate(mac.t_tr, mac.t_int);
    let eps = gas.relaxation_time(mac.rho, mac.t_eq);

    // analytic midpoint trajectories: temperatures relax at 1/(eps Z),
    // the axial stress at 1/(eps Pr)
    let half_t = (-0.5 * dt / (eps * z)).exp();
    let half_s = (-0.5 * dt / (eps * gas.prandtl)).exp();
    let t_tr_half = mac.t_eq + (mac.t_tr - mac.t_eq) * half_t;
    let t_int_half = mac.t_eq + (mac.t_int - mac.t_eq) * half_t;
    let sigma11 = mac.theta11 - mac.rho * gas.r * mac.t_tr;
    let theta11_half = mac.rho * gas.r * t_tr_half + sigma11 * half_s;
    let mac_half = ReducedMacro {
        t_tr: t_tr_half,
        t_int: t_int_half,
        theta11: theta11_half,
        ..mac
    };
    let target = reduced_targets(lattice, &mac_half, gas, gas.prandtl, z)?;

    let lam = (-dt / eps).exp();
    let mix = |f: &[f64], t: &[f64]| -> Vec<f64> {
        f.iter().zip(t).map(|(&x, &y)| y + (x - y) * lam).collect()
    };
    Ok(ReducedDistribution {
        g: mix(&cell.g, &target.g),
        h1: mix(&cell.h1, &target.h1),
        h2: mix(&cell.h2, &target.h2),
    })
}

/// Spatial grid of reduced distributions.
#[derive(Debug, Clone)]
pub struct DvmGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
    pub lattice: VelocityLattice,
    pub cells: Vec<ReducedDistribution>,
}

impl DvmGrid {
    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }
}

/// Configuration of a reference run.
#[derive(Debug, Clone)]
pub struct DvmConfig {
    pub gas: GasModel,
    pub n_v: usize,
    /// Lattice half-width in units of `sqrt(R T_ref)`.
    pub halfwidth: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub initial: InitialCondition,
}

impl DvmConfig {
    fn validate(&self) -> Result<()> {
        self.gas.validate()?;
        if (self.gas.delta - 2.0).abs() > 1e-12 {
            return Err(Error::Config(
                "the reduced reference solver requires delta = 2".into(),
            ));
        }
        if self.n_v < 8 || self.n_cells < 4 || self.t_end <= 0.0 {
            return Err(Error::Config(
                "invalid reference solver discretization".into(),
            ));
        }
        Ok(())
    }

    /// Reference frame covering both initial states.
    pub fn lattice(&self) -> VelocityLattice {
        let (u_ref, t_ref) = match self.initial {
            InitialCondition::ShockTube { t_l, t_r, .. } => (0.0, t_l.max(t_r)),
            InitialCondition::ShockStructure { mach, gamma } => {
                let ((_, ul, tl), (_, ur, tr)) = rankine_hugoniot(mach, gamma);
                (0.5 * (ul + ur), tl.max(tr) + 0.25 * (ul - ur) * (ul - ur))
            }
        };
        VelocityLattice::new(u_ref, self.gas.r * t_ref, self.halfwidth, self.n_v)
    }
}

/// Initializes the grid with discretized equilibria.
pub fn dvm_init(config: &DvmConfig) -> Result<DvmGrid> {
    config.validate()?;
    let lattice = config.lattice();
    let dx = (config.x_max - config.x_min) / config.n_cells as f64;
    let mut cells = Vec::with_capacity(config.n_cells);
    for i in 0..config.n_cells {
        let x = config.x_min + (i as f64 + 0.5) * dx;
        let (rho, u1, t) = match config.initial {
            InitialCondition::ShockTube {
                rho_l,
                t_l,
                rho_r,
                t_r,
            } => {
                if x < 0.0 {
                    (rho_l, 0.0, t_l)
                } else {
                    (rho_r, 0.0, t_r)
                }
            }
            InitialCondition::ShockStructure { mach, gamma } => {
                let ((rl, ul, tl), (rr, ur, tr)) = rankine_hugoniot(mach, gamma);
                if x < 0.0 {
                    (rl, ul, tl)
                } else {
                    (rr, ur, tr)
                }
            }
        };
        cells.push(reduced_equilibrium(&lattice, &config.gas, rho, u1, t));
    }
    Ok(DvmGrid {
        x_min: config.x_min,
        x_max: config.x_max,
        dx,
        lattice,
        cells,
    })
}

/// First-order upwind transport step with zero-gradient boundaries.
pub fn dvm_transport_step(grid: &DvmGrid, dt: f64) -> DvmGrid {
    let n = grid.cells.len();
    let nv = grid.lattice.nodes.len();
    let mut new_cells = grid.cells.clone();
    let c = dt / grid.dx;
    for i in 0..n {
        for (j, &v) in grid.lattice.nodes.iter().enumerate() {
            let (up, here) = if v >= 0.0 {
                (if i == 0 { i } else { i - 1 }, i)
            } else {
                (if i + 1 == n { i } else { i + 1 }, i)
            };
            let gg =
                grid.cells[here].g[j] - c * v.abs() * (grid.cells[here].g[j] - grid.cells[up].g[j]);
            let hh1 = grid.cells[here].h1[j]
                - c * v.abs() * (grid.cells[here].h1[j] - grid.cells[up].h1[j]);
            let hh2 = grid.cells[here].h2[j]
                - c * v.abs() * (grid.cells[here].h2[j] - grid.cells[up].h2[j]);
            new_cells[i].g[j] = gg;
            new_cells[i].h1[j] = hh1;
            new_cells[i].h2[j] = hh2;
        }
        debug_assert_eq!(new_cells[i].g.len(), nv);
    }
    DvmGrid {
        x_min: grid.x_min,
        x_max: grid.x_max,
        dx: grid.dx,
        lattice: grid.lattice.clone(),
        cells: new_cells,
    }
}

/// Full reference run: upwind transport split with the exact-exponential
/// collision substep.
pub fn dvm_run(config: &DvmConfig) -> Result<DvmGrid> {
    let mut grid = dvm_init(config)?;
    let dt_max = config.cfl * grid.dx / grid.lattice.max_speed();
    let mut t = 0.0;
    while t < config.t_end {
        let dt = dt_max.min(config.t_end - t);
        grid = dvm_transport_step(&grid, dt);
        let mut new_cells = Vec::with_capacity(grid.cells.len());
        for cell in &grid.cells {
            new_cells.push(dvm_collision_step(&grid.lattice, cell, &config.gas, dt)?);
        }
        grid.cells = new_cells;
        t += dt;
    }
    Ok(grid)
}

/// Density profile of a reference grid.
pub fn density_profile(grid: &DvmGrid, gas: &GasModel) -> Result<Vec<f64>> {
    grid.cells
        .iter()
        .map(|c| reduce_macroscopic(&grid.lattice, c, gas).map(|m| m.rho))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::{CollisionNumber, ViscosityLaw};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn gas(kn: f64, z: f64) -> GasModel {
        GasModel {
            r: 1.0,
            delta: 2.0,
            prandtl: 0.72,
            knudsen: kn,
            viscosity: ViscosityLaw::linear(),
            collision_number: CollisionNumber::Constant { value: z },
        }
    }

    #[test]
    fn equilibrium_recovery_on_lattice() {
        let gas = gas(0.1, 5.0);
        let lattice = VelocityLattice::new(0.0, 1.0, 8.0, 400);
        let cell = reduced_equilibrium(&lattice, &gas, 1.0, 0.0, 1.0);
        let mac = reduce_macroscopic(&lattice, &cell, &gas).unwrap();
        assert_relative_eq!(mac.rho, 1.0, max_relative = 1e-6);
        assert_abs_diff_eq!(mac.u1, 0.0, epsilon = 1e-9);
        assert_relative_eq!(mac.t_tr, 1.0, max_relative = 1e-6);
        assert_relative_eq!(mac.t_int, 1.0, max_relative = 1e-6);

        let shifted = reduced_equilibrium(&lattice, &gas, 2.0, 0.5, 1.2);
        let mac = reduce_macroscopic(&lattice, &shifted, &gas).unwrap();
        assert_relative_eq!(mac.u1, 0.5, max_relative = 1e-6);
        assert_relative_eq!(mac.t_tr, 1.2, max_relative = 1e-5);
    }

    #[test]
    fn collision_conserves_discrete_invariants() {
        let gas = gas(0.5, 3.0);
        let lattice = VelocityLattice::new(0.0, 1.5, 8.0, 200);
        // anisotropic state: mix two Maxwellians at different temperatures
        let a = reduced_equilibrium(&lattice, &gas, 0.7, 0.4, 0.8);
        let b = reduced_equilibrium(&lattice, &gas, 0.5, -0.3, 1.6);
        let cell = ReducedDistribution {
            g: a.g.iter().zip(&b.g).map(|(x, y)| x + y).collect(),
            h1: a.h1.iter().zip(&b.h1).map(|(x, y)| x + y).collect(),
            h2: a
                .h2
                .iter()
                .zip(&b.h2)
                .map(|(x, y)| 0.9 * x + 1.2 * y)
                .collect(),
        };
        let dv = lattice.dv;
        let moments = |c: &ReducedDistribution| -> (f64, f64, f64) {
            let mut m = (0.0, 0.0, 0.0);
            for i in 0..lattice.nodes.len() {
                let v = lattice.nodes[i];
                m.0 += c.g[i] * dv;
                m.1 += v * c.g[i] * dv;
                m.2 += (0.5 * v * v * c.g[i] + c.h1[i] + c.h2[i]) * dv;
            }
            m
        };
        let before = moments(&cell);
        let after_cell = dvm_collision_step(&lattice, &cell, &gas, 0.05).unwrap();
        let after = moments(&after_cell);
        assert_relative_eq!(after.0, before.0, max_relative = 1e-12);
        assert_abs_diff_eq!(after.1, before.1, epsilon = 1e-12 * before.2);
        assert_relative_eq!(after.2, before.2, max_relative = 1e-12);
    }

    #[test]
    fn collision_relaxation_rates_match_analytic() {
        // pure collision: T_tr, T_int relax toward T_eq at rate 1/(eps Z)
        let gas = gas(0.5, 3.0);
        let lattice = VelocityLattice::new(0.0, 1.5, 8.0, 400);
        let a = reduced_equilibrium(&lattice, &gas, 1.0, 0.0, 0.8);
        let mut cell = ReducedDistribution {
            g: a.g.clone(),
            h1: a.h1.clone(),
            // internal energy hotter than translational
            h2: a.h2.iter().map(|x| 1.5 * x).collect(),
        };
        let m0 = reduce_macroscopic(&lattice, &cell, &gas).unwrap();
        let eps = gas.relaxation_time(m0.rho, m0.t_eq);
        let t_total = 0.1;
        let n_steps = 50;
        for _ in 0..n_steps {
            cell = dvm_collision_step(&lattice, &cell, &gas, t_total / n_steps as f64).unwrap();
        }
        let m1 = reduce_macroscopic(&lattice, &cell, &gas).unwrap();
        let decay = (-t_total / (eps * 3.0)).exp();
        let expect_tr = m0.t_eq + (m0.t_tr - m0.t_eq) * decay;
        let expect_int = m0.t_eq + (m0.t_int - m0.t_eq) * decay;
        assert_relative_eq!(m1.t_tr, expect_tr, max_relative = 1e-4);
        assert_relative_eq!(m1.t_int, expect_int, max_relative = 1e-4);
        assert_relative_eq!(m1.t_eq, m0.t_eq, max_relative = 1e-12);
    }

    #[test]
    fn uniform_grid_stationary() {
        let cfg = DvmConfig {
            gas: gas(0.5, 5.0),
            n_v: 64,
            halfwidth: 8.0,
            x_min: -1.0,
            x_max: 1.0,
            n_cells: 10,
            cfl: 0.9,
            t_end: 0.05,
            initial: InitialCondition::ShockTube {
                rho_l: 2.0,
                t_l: 1.1,
                rho_r: 2.0,
                t_r: 1.1,
            },
        };
        let grid0 = dvm_init(&cfg).unwrap();
        let grid1 = dvm_run(&cfg).unwrap();
        for (a, b) in grid0.cells.iter().zip(&grid1.cells) {
            for (x, y) in a.g.iter().zip(&b.g) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-11);
            }
            for (x, y) in a.h2.iter().zip(&b.h2) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn shock_tube_density_bounds() {
        let cfg = DvmConfig {
            gas: gas(0.5, 5.0),
            n_v: 100,
            halfwidth: 8.0,
            x_min: -2.0,
            x_max: 2.0,
            n_cells: 50,
            cfl: 0.9,
            t_end: 0.1,
            initial: InitialCondition::ShockTube {
                rho_l: 7.0,
                t_l: 1.0,
                rho_r: 1.0,
                t_r: 1.0,
            },
        };
        let grid = dvm_run(&cfg).unwrap();
        let rho = density_profile(&grid, &cfg.gas).unwrap();
        assert!(rho.iter().all(|&r| r > 0.9 && r < 7.1));
        // left end still undisturbed, right end still undisturbed
        assert_relative_eq!(rho[0], 7.0, max_relative = 1e-3);
        assert_relative_eq!(rho[49], 1.0, max_relative = 1e-3);
    }
}
