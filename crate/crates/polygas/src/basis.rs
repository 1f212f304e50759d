//! Hermite and Laguerre polynomial families underlying the spectral basis.
//!
//! The velocity space uses the probabilists' Hermite polynomials `He_n`
//! (weight `exp(-x^2/2)`); the internal-energy ordinate uses generalized
//! Laguerre polynomials `L_k^(m)` with `m = delta/2 - 1`.

use crate::error::{Error, Result};

/// Degree bounds for the polynomial families of a given expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialDegreeBounds {
    /// Highest Hermite degree that is ever evaluated (M0 + 1 for closure).
    pub max_hermite_degree: usize,
    /// Highest Laguerre degree.
    pub max_laguerre_degree: usize,
    /// Laguerre order, m = delta/2 - 1.
    pub laguerre_order_m: f64,
}

impl PolynomialDegreeBounds {
    pub fn new(
        max_hermite_degree: usize,
        max_laguerre_degree: usize,
        laguerre_order_m: f64,
    ) -> Result<Self> {
        if max_hermite_degree < 3 {
            return Err(Error::Config("max_hermite_degree must be >= 3".into()));
        }
        if laguerre_order_m <= -1.0 {
            return Err(Error::Config(
                "laguerre_order_m must exceed -1 for an integrable weight".into(),
            ));
        }
        Ok(Self {
            max_hermite_degree,
            max_laguerre_degree,
            laguerre_order_m,
        })
    }
}

/// Evaluates the probabilists' Hermite polynomial `He_n(x)` by the
/// three-term recursion `He_{n+1} = x He_n - n He_{n-1}`.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let mut prev = 1.0;
            let mut cur = x;
            for k in 1..n {
                let next = x * cur - k as f64 * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Evaluates the generalized Laguerre polynomial `L_k^(m)(x)` by the
/// standard three-term recursion
/// `(k+1) L_{k+1} = (2k + m + 1 - x) L_k - (k + m) L_{k-1}`.
pub fn laguerre_eval(k: usize, m: f64, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 1.0 + m - x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 1.0 + m - x;
            for j in 1..k {
                let jf = j as f64;
                let next = ((2.0 * jf + m + 1.0 - x) * cur - (jf + m) * prev) / (jf + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// The Laguerre normalization constant
/// `gamma_k^(m) = Gamma(m + k + 1) / Gamma(k + 1)`.
///
/// Computed through the ratio identity
/// `gamma_{k+1} / gamma_k = (m + k + 1) / (k + 1)` starting from
/// `gamma_0 = Gamma(m + 1)`, which avoids large-argument gamma evaluations.
pub fn gamma_coefficient(k: usize, m: f64) -> f64 {
    let mut value = gamma(m + 1.0);
    for j in 0..k {
        let jf = j as f64;
        value *= (m + jf + 1.0) / (jf + 1.0);
    }
    value
}

/// Gamma function via the Lanczos approximation (g = 7, n = 9).
pub fn gamma(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection formula
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = COEFFS[0];
        let t = x + 7.5;
        for (i, &c) in COEFFS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// The largest real root `C(n)` of `He_n`, used by the CFL condition.
///
/// Found by bracketed bisection: all roots lie below `sqrt(4n + 2)`
/// (Krein's bound for the probabilists' normalization), so scanning down
/// from that bound for the first sign change brackets the largest root.
pub fn hermite_max_root(n: usize) -> Result<f64> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(0.0);
    }
    let upper = (4.0 * n as f64 + 2.0).sqrt();
    // Scan for the sign change closest to the upper bound.
    let steps = 4000;
    let h = upper / steps as f64;
    let mut hi = upper;
    let mut f_hi = hermite_eval(n, hi);
    let mut bracket = None;
    for i in (0..steps).rev() {
        let lo = i as f64 * h;
        let f_lo = hermite_eval(n, lo);
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_lo * f_hi < 0.0 {
            bracket = Some((lo, hi));
            break;
        }
        hi = lo;
        f_hi = f_lo;
    }
    let (mut lo, mut hi) =
        bracket.ok_or_else(|| Error::Numerical(format!("no sign change found for He_{n} root")))?;
    let mut f_lo = hermite_eval(n, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = hermite_eval(n, mid);
        if f_mid == 0.0 || hi - lo < 1e-14 {
            return Ok(mid);
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
