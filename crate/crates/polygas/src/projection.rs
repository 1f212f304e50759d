//! Change of expansion frame and multiplication by the velocity variable.
//!
//! A coefficient set represents one distribution function in many frames.
//! Re-expansion in a new `(u, T_tr, T_int)` is done in two stages: an
//! algebraic rescaling of the internal temperature followed by a
//! homotopy ODE in the velocity variables, integrated with fixed-step RK4.
//! The ODE couples each coefficient only to strictly lower degrees, so the
//! retained degrees stay exact up to integrator error.

use crate::error::Result;
use crate::index::{self, MultiIndex};
use crate::moment::{ExpansionFrame, MomentCoefficients};

/// RK4 substeps used when the caller has no accuracy preference.
pub const DEFAULT_SUBSTEPS: usize = 16;

/// A frame change from `source` to `target` for the same gas (`r` and
/// `delta` must agree).
#[derive(Debug, Clone, Copy)]
pub struct FrameChangeRequest {
    pub source: ExpansionFrame,
    pub target: ExpansionFrame,
    pub substeps: usize,
}

/// Stage one: re-expand with the internal temperature scale moved from
/// `T_int` to `t_int_new`, leaving `u` and `T_tr` alone. Exact.
pub fn rescale_internal_temperature(
    coeffs: &MomentCoefficients,
    t_int_new: f64,
) -> MomentCoefficients {
    let mut out = coeffs.clone();
    let f = &coeffs.frame;
    let shift = 0.5 * f.delta * f.r * (t_int_new - f.t_int);
    for a in index::enumerate(coeffs.m1()) {
        let v = coeffs.get1(a) + shift * coeffs.get0(a);
        out.set1(a, v);
    }
    out.frame.t_int = t_int_new;
    out
}

/// Stage two: re-expand in a frame with new velocity and translational
/// temperature. The internal temperature of `request.target` must equal the
/// source's (use [`rescale_internal_temperature`] first).
pub fn change_velocity_frame(
    coeffs: &MomentCoefficients,
    request: &FrameChangeRequest,
) -> Result<MomentCoefficients> {
    let src = &request.source;
    let tgt = &request.target;
    assert_eq!(src.r, tgt.r);
    assert_eq!(src.delta, tgt.delta);
    assert!(
        (src.t_int - tgt.t_int).abs() <= 1e-12 * src.t_int.abs(),
        "internal temperature must be rescaled before the velocity stage"
    );
    tgt.validate()?;

    let t_hat = (src.t_tr / tgt.t_tr).sqrt();
    let rt_tr = src.rt_tr();
    let du = [
        src.u[0] - tgt.u[0],
        src.u[1] - tgt.u[1],
        src.u[2] - tgt.u[2],
    ];

    let pure_shift = (t_hat - 1.0).abs() < 1e-15;
    if pure_shift && du.iter().all(|&d| d == 0.0) {
        let mut out = coeffs.clone();
        out.frame = *tgt;
        return Ok(out);
    }

    let idx0 = index::enumerate(coeffs.m0());
    let idx1 = index::enumerate(coeffs.m1());
    let mut f0 = coeffs.data0.clone();
    let mut f1 = coeffs.data1.clone();

    let n = request.substeps.max(1);
    let h = 1.0 / n as f64;
    let rhs = |tau: f64, y0: &[f64], y1: &[f64], out0: &mut [f64], out1: &mut [f64]| {
        let s = (t_hat - 1.0) / ((t_hat - 1.0) * tau + 1.0);
        let c = (1.0 - tau * s) * (1.0 - tau * s);
        derivative(&idx0, y0, s, c, t_hat, rt_tr, &du, out0);
        derivative(&idx1, y1, s, c, t_hat, rt_tr, &du, out1);
    };

    let mut k0 = [
        vec![0.0; f0.len()],
        vec![0.0; f0.len()],
        vec![0.0; f0.len()],
        vec![0.0; f0.len()],
    ];
    let mut k1 = [
        vec![0.0; f1.len()],
        vec![0.0; f1.len()],
        vec![0.0; f1.len()],
        vec![0.0; f1.len()],
    ];
    let mut tmp0 = vec![0.0; f0.len()];
    let mut tmp1 = vec![0.0; f1.len()];
    for step in 0..n {
        let tau = step as f64 * h;
        let stages: [(f64, f64); 4] = [(0.0, 0.0), (0.5, 0.5), (0.5, 0.5), (1.0, 1.0)];
        for (i, &(ct, cy)) in stages.iter().enumerate() {
            if i == 0 {
                let (s0, s1) = (&mut k0[0], &mut k1[0]);
                rhs(tau, &f0, &f1, s0, s1);
                continue;
            }
            for (t, (y, k)) in tmp0.iter_mut().zip(f0.iter().zip(&k0[i - 1])) {
                *t = y + cy * h * k;
            }
            for (t, (y, k)) in tmp1.iter_mut().zip(f1.iter().zip(&k1[i - 1])) {
                *t = y + cy * h * k;
            }
            let mut s0 = std::mem::take(&mut k0[i]);
            let mut s1 = std::mem::take(&mut k1[i]);
            rhs(tau + ct * h, &tmp0, &tmp1, &mut s0, &mut s1);
            k0[i] = s0;
            k1[i] = s1;
        }
        for (j, y) in f0.iter_mut().enumerate() {
            *y += h / 6.0 * (k0[0][j] + 2.0 * k0[1][j] + 2.0 * k0[2][j] + k0[3][j]);
        }
        for (j, y) in f1.iter_mut().enumerate() {
            *y += h / 6.0 * (k1[0][j] + 2.0 * k1[1][j] + 2.0 * k1[2][j] + k1[3][j]);
        }
    }

    let mut out = MomentCoefficients::zeros(*tgt, coeffs.m0());
    out.data0 = f0;
    out.data1 = f1;
    Ok(out)
}

fn derivative(
    indices: &[MultiIndex],
    y: &[f64],
    s: f64,
    c: f64,
    t_hat: f64,
    rt_tr: f64,
    du: &[f64; 3],
    out: &mut [f64],
) {
    for (i, &a) in indices.iter().enumerate() {
        let mut acc = 0.0;
        for d in 0..3 {
            if a[d] >= 2 {
                let mut b = a;
                b[d] -= 2;
                acc += s * rt_tr * y[index::position(b)];
            }
            if a[d] >= 1 && du[d] != 0.0 {
                let mut b = a;
                b[d] -= 1;
                acc += du[d] * t_hat * y[index::position(b)];
            }
        }
        out[i] = c * acc;
    }
}

/// Full frame change: internal rescale then the velocity stage.
pub fn reexpand(
    coeffs: &MomentCoefficients,
    target: ExpansionFrame,
    substeps: usize,
) -> Result<MomentCoefficients> {
    let rescaled = rescale_internal_temperature(coeffs, target.t_int);
    change_velocity_frame(
        &rescaled,
        &FrameChangeRequest {
            source: rescaled.frame,
            target,
            substeps,
        },
    )
}

/// Coefficients of `xi_j f` in the same frame. The result carries one more
/// velocity degree than the input.
pub fn multiply_by_xi(coeffs: &MomentCoefficients, j: usize) -> MomentCoefficients {
    let f = &coeffs.frame;
    let mut out = MomentCoefficients::zeros(*f, coeffs.m0() + 1);
    for k in 0..=1 {
        let max = if k == 0 { coeffs.m0() } else { coeffs.m1() };
        for a in index::enumerate(max) {
            let v = if k == 0 {
                coeffs.get0(a)
            } else {
                coeffs.get1(a)
            };
            if v == 0.0 {
                continue;
            }
            let mut up = a;
            up[j] += 1;
            let set = |o: &mut MomentCoefficients, idx: MultiIndex, inc: f64| {
                if k == 0 {
                    let old = o.get0(idx);
                    o.set0(idx, old + inc);
                } else {
                    let old = o.get1(idx);
                    o.set1(idx, old + inc);
                }
            };
            set(&mut out, up, f.rt_tr() * v);
            set(&mut out, a, f.u[j] * v);
            if a[j] >= 1 {
                let mut down = a;
                down[j] -= 1;
                set(&mut out, down, a[j] as f64 * v);
            }
        }
    }
    out
}
