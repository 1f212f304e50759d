//! ES-BGK collision model: coefficients of the generalized Gaussian and
//! the per-cell collision step.
//!
//! The collision step advances the space-homogeneous relaxation equation
//! by one time step. Density, velocity and equilibrium temperature are
//! invariants; the two temperatures and the second-order coefficients
//! relax exponentially with known rates, so they are advanced exactly.
//! All remaining coefficients take a Crank-Nicolson step around the
//! midpoint Gaussian, swept in ascending degree so no linear system
//! appears.

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::index::{self, MultiIndex};
use crate::moment::{ExpansionFrame, MomentCoefficients};

/// Model constants of the collision operator.
#[derive(Debug, Clone, Copy)]
pub struct CollisionParameters {
    pub prandtl: f64,
    /// Relaxation collision number Z (ratio of internal to translational
    /// relaxation time scales).
    pub z: f64,
}

/// Macroscopic inputs determining the Gaussian.
#[derive(Debug, Clone, Copy)]
pub struct GaussianInputs {
    pub rho: f64,
    pub t_tr: f64,
    pub t_int: f64,
    /// Pressure tensor Theta (symmetric).
    pub theta: [[f64; 3]; 3],
}

fn t_eq(t_tr: f64, t_int: f64, delta: f64) -> f64 {
    (3.0 * t_tr + delta * t_int) / (3.0 + delta)
}

/// The matrix `A = T - R T_tr Id` driving the degree-two recursion, where
/// `T` is the tensor of the anisotropic Gaussian.
fn gaussian_matrix(
    inputs: &GaussianInputs,
    params: &CollisionParameters,
    r: f64,
    delta: f64,
) -> [[f64; 3]; 3] {
    let teq = t_eq(inputs.t_tr, inputs.t_int, delta);
    let mut a = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let kron = if i == j { 1.0 } else { 0.0 };
            a[i][j] = (1.0 - 1.0 / params.prandtl)
                * (inputs.theta[i][j] / inputs.rho - r * inputs.t_tr * kron)
                + (r * teq - r * inputs.t_tr) / params.z * kron;
        }
    }
    a
}

/// Coefficients of the generalized Gaussian in the frame
/// `(u, T_tr, T_int)` of the state it relaxes, up to degree `m0`.
///
/// Fails when the Gaussian tensor `T = R T_tr Id + A` is not positive
/// definite, which happens for strongly anisotropic `Theta` at small Pr.
pub fn gaussian_coefficients(
    inputs: &GaussianInputs,
    params: &CollisionParameters,
    frame: ExpansionFrame,
    m0: usize,
) -> Result<MomentCoefficients> {
    let r = frame.r;
    let delta = frame.delta;
    let a = gaussian_matrix(inputs, params, r, delta);
    let tensor = Matrix3::from_fn(|i, j| a[i][j] + if i == j { r * inputs.t_tr } else { 0.0 });
    if tensor.cholesky().is_none() {
        return Err(Error::TensorNotSpd(format!(
            "Gaussian tensor {tensor:?} (Pr = {}, Z = {})",
            params.prandtl, params.z
        )));
    }

    let mut g = MomentCoefficients::zeros(frame, m0);
    g.set0([0, 0, 0], inputs.rho);
    for a_idx in index::enumerate(m0) {
        let deg = a_idx[0] + a_idx[1] + a_idx[2];
        if deg < 2 || deg % 2 == 1 {
            continue;
        }
        let i = (0..3).find(|&d| a_idx[d] > 0).unwrap();
        let mut acc = 0.0;
        for j in 0..3 {
            if let Some(b) = sub2(a_idx, i, j) {
                acc += a[i][j] * g.get0(b);
            }
        }
        g.set0(a_idx, acc / a_idx[i] as f64);
    }
    let teq = t_eq(inputs.t_tr, inputs.t_int, delta);
    let c = delta / (2.0 * params.z) * (r * inputs.t_int - r * teq);
    for a_idx in index::enumerate(g.m1()) {
        g.set1(a_idx, c * g.get0(a_idx));
    }
    Ok(g)
}

fn sub2(a: MultiIndex, i: usize, j: usize) -> Option<MultiIndex> {
    let mut b = a;
    if b[i] == 0 {
        return None;
    }
    b[i] -= 1;
    if b[j] == 0 {
        return None;
    }
    b[j] -= 1;
    Some(b)
}

/// Advances the collision-only equation by `dt` starting from a state in
/// normal representation. `epsilon = mu / (Pr p)` is the relaxation time.
/// The result is again in normal representation, in the frame with the
/// relaxed temperatures.
pub fn collision_step(
    coeffs: &MomentCoefficients,
    params: &CollisionParameters,
    epsilon: f64,
    dt: f64,
) -> Result<MomentCoefficients> {
    let frame = coeffs.frame;
    let r = frame.r;
    let delta = frame.delta;
    let m = delta / 2.0 - 1.0;
    let rho = coeffs.get0([0, 0, 0]);
    let teq = t_eq(frame.t_tr, frame.t_int, delta);

    let decay_t = (-dt / (epsilon * params.z)).exp();
    let t_tr_new = teq + (frame.t_tr - teq) * decay_t;
    let t_int_new = teq + (frame.t_int - teq) * decay_t;
    let half_t = (-0.5 * dt / (epsilon * params.z)).exp();
    let t_tr_half = teq + (frame.t_tr - teq) * half_t;
    let t_int_half = teq + (frame.t_int - teq) * half_t;

    let mut out = MomentCoefficients::zeros(
        ExpansionFrame {
            t_tr: t_tr_new,
            t_int: t_int_new,
            ..frame
        },
        coeffs.m0(),
    );
    out.set0([0, 0, 0], rho);

    // exact exponential decay of the second-degree coefficients
    let decay_sigma = (-dt / (epsilon * params.prandtl)).exp();
    let half_sigma = (-0.5 * dt / (epsilon * params.prandtl)).exp();
    let mut theta_half = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let mut a = [0usize; 3];
            a[i] += 1;
            a[j] += 1;
            out.set0(a, coeffs.get0(a) * decay_sigma);
            let kron = if i == j { 1.0 } else { 0.0 };
            let v = (1.0 + kron) * coeffs.get0(a) * half_sigma + kron * rho * r * t_tr_half;
            theta_half[i][j] = v;
            theta_half[j][i] = v;
        }
    }

    let g_half = gaussian_coefficients(
        &GaussianInputs {
            rho,
            t_tr: t_tr_half,
            t_int: t_int_half,
            theta: theta_half,
        },
        params,
        ExpansionFrame {
            t_tr: t_tr_half,
            t_int: t_int_half,
            ..frame
        },
        coeffs.m0(),
    )?;

    // Crank-Nicolson sweep: the frame-drift terms use the midpoint
    // relaxation rates of the two temperatures. Ascending degree, k = 0
    // first, so every right-hand side entry is already available.
    let b_half = r * (teq - t_tr_half) / params.z;
    let c_half = r * (teq - t_int_half) / params.z;
    let lam = dt / epsilon;
    let denom = 1.0 + 0.5 * lam;
    for k in 0..=1usize {
        let max_deg = if k == 0 { coeffs.m0() } else { coeffs.m1() };
        let min_deg = if k == 0 { 3 } else { 1 };
        for a in index::enumerate(max_deg) {
            let deg = a[0] + a[1] + a[2];
            if deg < min_deg {
                continue;
            }
            let f0 = coeffs.at([a[0] as i64, a[1] as i64, a[2] as i64], k);
            let g = g_half.at([a[0] as i64, a[1] as i64, a[2] as i64], k);
            let mut drift = 0.0;
            for d in 0..3 {
                let lower = [a[0] as i64, a[1] as i64, a[2] as i64];
                let mut l = lower;
                l[d] -= 2;
                let avg = 0.5 * (coeffs.at(l, k) + out.at(l, k));
                drift -= 0.5 * b_half * avg;
            }
            if k == 1 {
                let ai = [a[0] as i64, a[1] as i64, a[2] as i64];
                let avg = 0.5 * (coeffs.at(ai, 0) + out.at(ai, 0));
                drift += (m + k as f64) * c_half * avg;
            }
            let f1 = (f0 + lam * (g - 0.5 * f0 + drift)) / denom;
            if k == 0 {
                out.set0(a, f1);
            } else {
                out.set1(a, f1);
            }
        }
    }
    Ok(out)
}
