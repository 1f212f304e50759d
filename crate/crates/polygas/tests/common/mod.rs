//! Shared oracle utilities for the integration tests.
//!
//! Everything here is an independent route to the quantities the library
//! computes: pointwise evaluation of the spectral expansion, and
//! Gauss-quadrature projection of an arbitrary distribution function onto
//! the basis. The quadratures are exact for polynomial integrands of the
//! degrees used, so disagreement with the library signals a library bug,
//! not an oracle artifact.

#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix3};
use polygas::basis::{gamma, gamma_coefficient, hermite_eval, laguerre_eval};
use polygas::index;
use polygas::moment::{ExpansionFrame, MomentCoefficients};

/// Nodes and weights for the weight `exp(-x^2/2)` on the real line
/// (probabilists' Gauss-Hermite), via the Golub-Welsch eigenproblem.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64).sqrt();
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let eig = jacobi.symmetric_eigen();
    let mu0 = (2.0 * std::f64::consts::PI).sqrt();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let w = mu0 * eig.eigenvectors[(0, i)] * eig.eigenvectors[(0, i)];
            (node, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

/// Nodes and weights for the weight `x^m exp(-x)` on the positive axis
/// (generalized Gauss-Laguerre).
pub fn gauss_laguerre(n: usize, m: f64) -> (Vec<f64>, Vec<f64>) {
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jacobi[(k, k)] = 2.0 * k as f64 + m + 1.0;
        if k + 1 < n {
            let b = ((k as f64 + 1.0) * (k as f64 + 1.0 + m)).sqrt();
            jacobi[(k, k + 1)] = b;
            jacobi[(k + 1, k)] = b;
        }
    }
    let eig = jacobi.symmetric_eigen();
    let mu0 = gamma(m + 1.0);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let w = mu0 * eig.eigenvectors[(0, i)] * eig.eigenvectors[(0, i)];
            (node, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

/// Pointwise value of the expansion at `(xi, i_energy)`.
pub fn eval_expansion(coeffs: &MomentCoefficients, xi: [f64; 3], i_energy: f64) -> f64 {
    let fr = &coeffs.frame;
    let rt_tr = fr.rt_tr();
    let rt_int = fr.rt_int();
    let m = fr.laguerre_order();
    let v = [
        (xi[0] - fr.u[0]) / rt_tr.sqrt(),
        (xi[1] - fr.u[1]) / rt_tr.sqrt(),
        (xi[2] - fr.u[2]) / rt_tr.sqrt(),
    ];
    let j = i_energy.powf(2.0 / fr.delta) / rt_int;
    let gauss_v = (-(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) / 2.0).exp()
        / (2.0 * std::f64::consts::PI).powf(1.5);
    let gauss_j = (-j).exp() * (2.0 / fr.delta);
    let mut total = 0.0;
    for k in 0..=1usize {
        let max = if k == 0 { coeffs.m0() } else { coeffs.m1() };
        let psi2 = gauss_j / gamma_coefficient(k, m)
            * rt_int.powf(-(fr.delta / 2.0 + k as f64))
            * laguerre_eval(k, m, j);
        for a in index::enumerate(max) {
            let c = if k == 0 {
                coeffs.get0(a)
            } else {
                coeffs.get1(a)
            };
            if c == 0.0 {
                continue;
            }
            let deg = (a[0] + a[1] + a[2]) as f64;
            let psi1 = rt_tr.powf(-(deg + 3.0) / 2.0)
                * hermite_eval(a[0], v[0])
                * hermite_eval(a[1], v[1])
                * hermite_eval(a[2], v[2])
                * gauss_v;
            total += c * psi1 * psi2;
        }
    }
    total
}

/// A quadrature-friendly distribution: a sum of anisotropic Gaussians in
/// velocity, each with an exponential internal-energy profile.
#[derive(Clone)]
pub struct GaussianMixture {
    pub components: Vec<MixtureComponent>,
    pub delta: f64,
}

#[derive(Clone, Copy)]
pub struct MixtureComponent {
    pub weight: f64,
    pub u: [f64; 3],
    /// Covariance of the velocity Gaussian (SPD).
    pub cov: Matrix3<f64>,
    /// Internal temperature scale of the `exp(-I^{2/delta}/theta)` factor.
    pub theta_int: f64,
}

impl GaussianMixture {
    /// Pointwise density value.
    pub fn eval(&self, xi: [f64; 3], i_energy: f64) -> f64 {
        let lambda = 1.0 / gamma(self.delta / 2.0 + 1.0);
        let mut total = 0.0;
        for c in &self.components {
            let d = nalgebra::Vector3::new(xi[0] - c.u[0], xi[1] - c.u[1], xi[2] - c.u[2]);
            let inv = c.cov.try_inverse().expect("mixture covariance invertible");
            let det = c.cov.determinant();
            let q = (d.transpose() * inv * d)[(0, 0)];
            let g_v = (2.0 * std::f64::consts::PI).powf(-1.5) / det.sqrt() * (-0.5 * q).exp();
            let g_i = lambda / c.theta_int.powf(self.delta / 2.0)
                * (-i_energy.powf(2.0 / self.delta) / c.theta_int).exp();
            total += c.weight * g_v * g_i;
        }
        total
    }

    /// Exact moments: (rho, rho*u, Theta about the mixture mean,
    /// internal energy integral int I^{2/delta} f).
    pub fn exact_macroscopic(&self) -> (f64, [f64; 3], Matrix3<f64>, f64) {
        let rho: f64 = self.components.iter().map(|c| c.weight).sum();
        let mut mom = [0.0; 3];
        for c in &self.components {
            for d in 0..3 {
                mom[d] += c.weight * c.u[d];
            }
        }
        let u = [mom[0] / rho, mom[1] / rho, mom[2] / rho];
        let mut theta = Matrix3::zeros();
        for c in &self.components {
            let du = nalgebra::Vector3::new(c.u[0] - u[0], c.u[1] - u[1], c.u[2] - u[2]);
            theta += c.weight * (c.cov + du * du.transpose());
        }
        // int I^{2/delta} exp(-I^{2/delta}/theta) dI = theta^{delta/2+1} *
        // (delta/2) Gamma(delta/2 + 1) and the Lambda factor cancels the
        // Gamma(delta/2 + 1) once per unit mass, leaving theta * delta/2
        let e_int: f64 = self
            .components
            .iter()
            .map(|c| c.weight * self.delta / 2.0 * c.theta_int)
            .sum();
        (rho, u, theta, e_int)
    }

    /// Exact total heat flux along x about the mixture mean:
    /// `int (|xi - u|^2 / 2 + I^{2/delta}) (xi_1 - u_1) f`.
    ///
    /// Per component with offset `d = u_c - u` and covariance `C`, the
    /// translational part is `w/2 * (d_1 (tr C + |d|^2) + 2 (C d)_1)` and
    /// the internal part is `w * delta/2 * theta_c * d_1`.
    pub fn exact_heat_flux(&self) -> f64 {
        let (_, u, _, _) = self.exact_macroscopic();
        let mut q1 = 0.0;
        for c in &self.components {
            let d = nalgebra::Vector3::new(c.u[0] - u[0], c.u[1] - u[1], c.u[2] - u[2]);
            let cd = c.cov * d;
            q1 += c.weight / 2.0 * (d[0] * (c.cov.trace() + d.norm_squared()) + 2.0 * cd[0]);
            q1 += c.weight * self.delta / 2.0 * c.theta_int * d[0];
        }
        q1
    }
}

/// Exact dual-basis projection of a mixture: each component is projected
/// with a quadrature matched to its own Gaussian, where the integrand is
/// (weight) x (polynomial) and the rule is exact.
pub fn project_mixture(
    mix: &GaussianMixture,
    frame: ExpansionFrame,
    m0: usize,
    n_nodes: usize,
) -> MomentCoefficients {
    let mut total = MomentCoefficients::zeros(frame, m0);
    for c in &mix.components {
        let single = GaussianMixture {
            components: vec![*c],
            delta: mix.delta,
        };
        let part = project_pointwise(
            &|xi, i| single.eval(xi, i),
            frame,
            m0,
            c.u,
            c.cov,
            c.theta_int,
            n_nodes,
        );
        total = total.linear_comb(1.0, &part, 1.0);
    }
    total
}

/// Deterministic random SPD matrix with eigenvalues bounded away from 0.
pub fn random_spd(rng: &mut impl rand::Rng, scale: f64) -> Matrix3<f64> {
    let b = Matrix3::from_fn(|_, _| rng.gen_range(-0.5..0.5));
    b * b.transpose() * scale + Matrix3::identity() * scale
}

/// Projects an arbitrary pointwise distribution onto the basis attached to
/// `frame` by Gauss quadrature, exactly for integrands that are (Gaussian
/// in xi) x (polynomial) with covariance `quad_cov` and mean `quad_u`, and
/// (exponential in I^{2/delta}) with scale `quad_theta`.
pub fn project_pointwise(
    f: &dyn Fn([f64; 3], f64) -> f64,
    frame: ExpansionFrame,
    m0: usize,
    quad_u: [f64; 3],
    quad_cov: Matrix3<f64>,
    quad_theta: f64,
    n_nodes: usize,
) -> MomentCoefficients {
    let chol = quad_cov.cholesky().expect("quadrature covariance SPD").l();
    let (h_nodes, h_weights) = gauss_hermite(n_nodes);
    let m = frame.laguerre_order();
    let (l_nodes, l_weights) = gauss_laguerre(n_nodes, m);
    let rt_tr = frame.rt_tr();
    let rt_int = frame.rt_int();

    let mut out = MomentCoefficients::zeros(frame, m0);
    // accumulate He-moment sums per multi-index and Laguerre order
    let idx0 = index::enumerate(m0);
    let idx1 = index::enumerate(m0 - 2);
    let mut acc0 = vec![0.0f64; idx0.len()];
    let mut acc1 = vec![0.0f64; idx1.len()];
    let norm_v = (2.0 * std::f64::consts::PI).powf(-1.5);

    for (&w0, &x0) in h_weights.iter().zip(&h_nodes) {
        for (&w1, &x1) in h_weights.iter().zip(&h_nodes) {
            for (&w2, &x2) in h_weights.iter().zip(&h_nodes) {
                let w = nalgebra::Vector3::new(x0, x1, x2);
                let xi_v = chol * w;
                let xi = [
                    quad_u[0] + xi_v[0],
                    quad_u[1] + xi_v[1],
                    quad_u[2] + xi_v[2],
                ];
                // density of the quadrature Gaussian at xi
                let det = quad_cov.determinant();
                let gauss = norm_v / det.sqrt() * (-0.5 * (x0 * x0 + x1 * x1 + x2 * x2)).exp();
                let v = [
                    (xi[0] - frame.u[0]) / rt_tr.sqrt(),
                    (xi[1] - frame.u[1]) / rt_tr.sqrt(),
                    (xi[2] - frame.u[2]) / rt_tr.sqrt(),
                ];
                let wv = w0 * w1 * w2 * norm_v;
                for (&wj, &j_node) in l_weights.iter().zip(&l_nodes) {
                    // I from the quadrature's internal scale
                    let i_energy = (quad_theta * j_node).powf(frame.delta / 2.0);
                    let value = f(xi, i_energy);
                    if value == 0.0 {
                        continue;
                    }
                    // measure dI = jac_i * J^m dJ; the J^m part is already the
                    // Gauss-Laguerre weight, so only e^{-J} needs removing
                    let jac_i = frame.delta / 2.0 * quad_theta.powf(frame.delta / 2.0);
                    let weight_i = (-j_node).exp();
                    let total_w = wv * wj / (gauss * weight_i) * value * jac_i;
                    // dual pairing: f_{alpha,k} = (RT_tr)^{|a|/2} (RT_int)^k
                    //   / alpha! * int f He_alpha(v) L_k(J_frame) dxi dI
                    let j_frame = i_energy.powf(2.0 / frame.delta) / rt_int;
                    for (p, &a) in idx0.iter().enumerate() {
                        let he = hermite_eval(a[0], v[0])
                            * hermite_eval(a[1], v[1])
                            * hermite_eval(a[2], v[2]);
                        let fact: f64 = factorial(a[0]) * factorial(a[1]) * factorial(a[2]);
                        let deg = (a[0] + a[1] + a[2]) as f64;
                        acc0[p] += total_w * he * rt_tr.powf(deg / 2.0) / fact;
                        if a[0] + a[1] + a[2] <= m0 - 2 {
                            let q = index::position(a);
                            acc1[q] += total_w
                                * he
                                * laguerre_eval(1, m, j_frame)
                                * rt_tr.powf(deg / 2.0)
                                * rt_int
                                / fact;
                        }
                    }
                }
            }
        }
    }
    out.data0.copy_from_slice(&acc0);
    out.data1.copy_from_slice(&acc1);
    out
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product::<f64>().max(1.0)
}
