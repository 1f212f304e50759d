//! Moment-coefficient data model: expansion frames, coefficient storage,
//! recovery of macroscopic quantities and the normal representation.

use crate::error::{Error, Result};
use crate::index::{self, MultiIndex};
use crate::projection;

/// The `(u, T_tr, T_int)` triple parameterizing the Hermite-Laguerre basis,
/// together with the gas constant and internal degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionFrame {
    pub u: [f64; 3],
    pub t_tr: f64,
    pub t_int: f64,
    pub r: f64,
    pub delta: f64,
}

impl ExpansionFrame {
    pub fn rt_tr(&self) -> f64 {
        self.r * self.t_tr
    }

    pub fn rt_int(&self) -> f64 {
        self.r * self.t_int
    }

    /// Laguerre order m = delta/2 - 1.
    pub fn laguerre_order(&self) -> f64 {
        self.delta / 2.0 - 1.0
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_tr <= 0.0 || self.t_int <= 0.0 {
            return Err(Error::InvalidState(format!(
                "non-positive frame temperature: T_tr = {}, T_int = {}",
                self.t_tr, self.t_int
            )));
        }
        Ok(())
    }
}

/// Truncated coefficient set `{f_{alpha,k}}` for `|alpha| <= M_k`,
/// `k in {0, 1}`, attached to an expansion frame. `M_1 = M_0 - 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCoefficients {
    pub frame: ExpansionFrame,
    m0: usize,
    pub data0: Vec<f64>,
    pub data1: Vec<f64>,
}

/// Total number of stored moments for a given `M_0`,
/// equal to `(M_0 + 1)(M_0^2 + 2 M_0 + 3) / 3`.
pub fn total_moment_count(m0: usize) -> usize {
    index::storage_len(m0) + index::storage_len(m0 - 2)
}

impl MomentCoefficients {
    pub fn zeros(frame: ExpansionFrame, m0: usize) -> Self {
        assert!(
            m0 >= 2,
            "M0 must be at least 2 (physical states need M0 >= 3)"
        );
        Self {
            frame,
            m0,
            data0: vec![0.0; index::storage_len(m0)],
            data1: vec![0.0; index::storage_len(m0 - 2)],
        }
    }

    /// Equilibrium state `rho * psi_{0,0}` in its own frame.
    pub fn equilibrium(frame: ExpansionFrame, rho: f64, m0: usize) -> Self {
        let mut c = Self::zeros(frame, m0);
        c.data0[0] = rho;
        c
    }

    pub fn m0(&self) -> usize {
        self.m0
    }

    pub fn m1(&self) -> usize {
        self.m0 - 2
    }

    pub fn get0(&self, a: MultiIndex) -> f64 {
        self.data0[index::position(a)]
    }

    pub fn get1(&self, a: MultiIndex) -> f64 {
        self.data1[index::position(a)]
    }

    pub fn set0(&mut self, a: MultiIndex, v: f64) {
        self.data0[index::position(a)] = v;
    }

    pub fn set1(&mut self, a: MultiIndex, v: f64) {
        self.data1[index::position(a)] = v;
    }

    /// `f_{alpha,k}` with out-of-range and negative indices read as zero.
    pub fn at(&self, a: [i64; 3], k: usize) -> f64 {
        if a.iter().any(|&c| c < 0) {
            return 0.0;
        }
        let a = [a[0] as usize, a[1] as usize, a[2] as usize];
        let deg = a[0] + a[1] + a[2];
        match k {
            0 if deg <= self.m0 => self.get0(a),
            1 if deg <= self.m1() => self.get1(a),
            _ => 0.0,
        }
    }

    /// Copies the coefficients into a set truncated (or zero-extended) to
    /// degree `new_m0`; the frame is unchanged.
    pub fn resized(&self, new_m0: usize) -> Self {
        let mut out = Self::zeros(self.frame, new_m0);
        let n0 = out.data0.len().min(self.data0.len());
        out.data0[..n0].copy_from_slice(&self.data0[..n0]);
        let n1 = out.data1.len().min(self.data1.len());
        out.data1[..n1].copy_from_slice(&self.data1[..n1]);
        out
    }

    /// Coefficient-wise linear combination; both operands must share a frame.
    pub fn linear_comb(&self, a: f64, other: &Self, b: f64) -> Self {
        assert_eq!(self.m0, other.m0);
        let mut out = self.clone();
        for (x, y) in out.data0.iter_mut().zip(&other.data0) {
            *x = a * *x + b * y;
        }
        for (x, y) in out.data1.iter_mut().zip(&other.data1) {
            *x = a * *x + b * y;
        }
        out
    }

    pub fn scale(&mut self, s: f64) {
        for x in &mut self.data0 {
            *x *= s;
        }
        for x in &mut self.data1 {
            *x *= s;
        }
    }

    /// Residuals of the normal-representation constraints (Eq. 17):
    /// `(max_j |f_{e_j,0}|, |f_{0,1}|, |sum_d f_{2e_d,0}|)`.
    pub fn normal_rep_residual(&self) -> (f64, f64, f64) {
        let du = (0..3)
            .map(|j| self.get0(index::unit(j)).abs())
            .fold(0.0, f64::max);
        let d1 = self.get1([0, 0, 0]).abs();
        let tr: f64 = (0..3)
            .map(|j| {
                let mut a = [0usize; 3];
                a[j] = 2;
                self.get0(a)
            })
            .sum();
        (du, d1, tr.abs())
    }

    pub fn is_normal_rep(&self, tol: f64) -> bool {
        let (du, d1, tr) = self.normal_rep_residual();
        let scale = self.data0[0].abs().max(1e-300);
        du / (scale * self.frame.rt_tr().sqrt()) < tol
            && d1 / (scale * self.frame.rt_int()) < tol
            && tr / (scale * self.frame.rt_tr()) < tol
    }
}

/// Macroscopic quantities recovered from a coefficient set.
#[derive(Debug, Clone, Copy)]
pub struct MacroscopicState {
    pub rho: f64,
    pub u: [f64; 3],
    pub t_tr: f64,
    pub t_int: f64,
    pub t_eq: f64,
    pub p: f64,
    /// Pressure-like tensor Theta_ij = int (xi-u)(xi-u) f.
    pub theta: [[f64; 3]; 3],
    /// Third-order contraction Q_j = 2 f_{3e_j,0} + sum_d f_{e_j+2e_d,0}.
    pub q: [f64; 3],
    /// Total heat flux along x, including the internal-energy transport.
    pub q1: f64,
}

/// Density, velocity and temperatures from the general (not necessarily
/// normal) representation.
pub fn recover_basic(coeffs: &MomentCoefficients) -> Result<(f64, [f64; 3], f64, f64)> {
    let f = &coeffs.frame;
    let rho = coeffs.data0[0];
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidState(format!(
            "recovered density {rho} is not positive"
        )));
    }
    let mut u = [0.0; 3];
    for j in 0..3 {
        u[j] = f.u[j] + coeffs.get0(index::unit(j)) / rho;
    }
    // internal energy: (delta/2) R T_int rho - f_{0,1}
    let f01 = coeffs.get1([0, 0, 0]);
    let t_int = f.t_int - 2.0 * f01 / (f.delta * f.r * rho);
    // total kinetic energy: int |xi|^2/2 f
    let mut e_kin = 0.5 * rho * (f.u[0] * f.u[0] + f.u[1] * f.u[1] + f.u[2] * f.u[2]);
    for j in 0..3 {
        let mut a2 = [0usize; 3];
        a2[j] = 2;
        e_kin += 0.5 * f.rt_tr() * rho + f.u[j] * coeffs.get0(index::unit(j)) + coeffs.get0(a2);
    }
    let u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    let t_tr = (e_kin - 0.5 * rho * u2) * 2.0 / (3.0 * rho * f.r);
    if !(t_tr > 0.0) || !(t_int > 0.0) {
        return Err(Error::InvalidState(format!(
            "recovered non-positive temperature: T_tr = {t_tr}, T_int = {t_int}"
        )));
    }
    Ok((rho, u, t_tr, t_int))
}

/// Full macroscopic recovery. Works for any representation; the tensor
/// quantities are read off after an internal change to the normal
/// representation when needed.
pub fn recover_macroscopic(coeffs: &MomentCoefficients) -> Result<MacroscopicState> {
    let normal;
    let c = if coeffs.is_normal_rep(1e-12) {
        coeffs
    } else {
        normal = normalize(coeffs)?;
        &normal
    };
    let f = &c.frame;
    let rho = c.data0[0];
    let t_tr = f.t_tr;
    let t_int = f.t_int;
    let t_eq = (3.0 * t_tr + f.delta * t_int) / (3.0 + f.delta);
    let p = rho * f.r * t_eq;

    let mut theta = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut a = [0usize; 3];
            a[i] += 1;
            a[j] += 1;
            let kron = if i == j { 1.0 } else { 0.0 };
            theta[i][j] = (1.0 + kron) * c.get0(a) + kron * rho * f.rt_tr();
        }
    }
    let mut q = [0.0; 3];
    for j in 0..3 {
        let mut a3 = [0usize; 3];
        a3[j] = 3;
        q[j] = 2.0 * c.get0(a3);
        for d in 0..3 {
            let mut a = [0usize; 3];
            a[j] += 1;
            a[d] += 2;
            q[j] += c.get0(a);
        }
    }
    // q1 = Q_1 - f_{e_1,1}; the internal-energy transport enters with a
    // minus sign through the third relation of the moment recovery.
    let q1 = q[0] - c.get1([1, 0, 0]);
    Ok(MacroscopicState {
        rho,
        u: f.u,
        t_tr,
        t_int,
        t_eq,
        p,
        theta,
        q,
        q1,
    })
}

/// Rewrites the coefficients in the frame recovered from themselves so the
/// normal-representation constraints (Eq. 17) hold, representing the same
/// distribution function.
pub fn normalize(coeffs: &MomentCoefficients) -> Result<MomentCoefficients> {
    normalize_with_substeps(coeffs, projection::DEFAULT_SUBSTEPS)
}

pub fn normalize_with_substeps(
    coeffs: &MomentCoefficients,
    substeps: usize,
) -> Result<MomentCoefficients> {
    let (_, u, t_tr, t_int) = recover_basic(coeffs)?;
    let rescaled = projection::rescale_internal_temperature(coeffs, t_int);
    let target = ExpansionFrame {
        u,
        t_tr,
        t_int,
        ..coeffs.frame
    };
    let mut out = projection::change_velocity_frame(
        &rescaled,
        &projection::FrameChangeRequest {
            source: rescaled.frame,
            target,
            substeps,
        },
    )?;
    // The projection leaves integrator-error-sized residuals in the
    // constrained entries; pin them to the exact normal representation.
    for j in 0..3 {
        out.set0(index::unit(j), 0.0);
    }
    out.set1([0, 0, 0], 0.0);
    let trace: f64 = (0..3)
        .map(|j| {
            let mut a = [0usize; 3];
            a[j] = 2;
            out.get0(a)
        })
        .sum();
    for j in 0..3 {
        let mut a = [0usize; 3];
        a[j] = 2;
        let v = out.get0(a);
        out.set0(a, v - trace / 3.0);
    }
    Ok(out)
}
