//! Linearized regularization closing the truncated moment hierarchy.
//!
//! The first moments beyond the truncation degree are approximated by a
//! gradient-transport expression, which adds the diffusion that removes
//! subshocks from the profiles. In one spatial dimension only the
//! x-derivative contributes.

use crate::index;
use crate::moment::MomentCoefficients;

/// Extends `f` by one degree, filling the new top-degree entries with the
/// closure
/// `f_{alpha,k} = -epsilon R T_tr d f_{alpha - e_1,k} / dx`
/// at `|alpha| = M_k + 1`, where `epsilon = mu / (Pr p)`.
///
/// `df_dx` holds the spatial derivative of the coefficients in the same
/// expansion frame as `f`.
pub fn close_with_gradient(
    f: &MomentCoefficients,
    df_dx: &MomentCoefficients,
    epsilon: f64,
) -> MomentCoefficients {
    assert_eq!(f.frame, df_dx.frame, "closure requires a common frame");
    assert_eq!(f.m0(), df_dx.m0());
    let mut out = f.resized(f.m0() + 1);
    let coeff = -epsilon * f.frame.rt_tr();
    for k in 0..=1usize {
        let top = if k == 0 { out.m0() } else { out.m1() };
        for a in index::enumerate(top) {
            if a[0] + a[1] + a[2] != top || a[0] == 0 {
                continue;
            }
            let mut b = a;
            b[0] -= 1;
            let v = coeff * if k == 0 { df_dx.get0(b) } else { df_dx.get1(b) };
            if k == 0 {
                out.set0(a, v);
            } else {
                out.set1(a, v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moment::ExpansionFrame;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn frame() -> ExpansionFrame {
        ExpansionFrame {
            u: [0.0; 3],
            t_tr: 1.5,
            t_int: 1.0,
            r: 1.0,
            delta: 2.0,
        }
    }

    #[test]
    fn zero_gradient_gives_zero_top_degree() {
        let mut f = MomentCoefficients::equilibrium(frame(), 2.0, 4);
        f.set0([3, 0, 0], 0.1);
        let grad = MomentCoefficients::zeros(frame(), 4);
        let closed = close_with_gradient(&f, &grad, 0.3);
        assert_eq!(closed.m0(), 5);
        assert_relative_eq!(closed.get0([3, 0, 0]), 0.1);
        for a in index::enumerate(5) {
            if a[0] + a[1] + a[2] == 5 {
                assert_abs_diff_eq!(closed.get0(a), 0.0);
            }
        }
    }

    #[test]
    fn closure_matches_formula() {
        let f = MomentCoefficients::equilibrium(frame(), 2.0, 4);
        let mut grad = MomentCoefficients::zeros(frame(), 4);
        grad.set0([4, 0, 0], 0.7);
        grad.set0([2, 2, 0], -0.4);
        grad.set1([2, 0, 0], 0.2);
        let eps = 0.3;
        let closed = close_with_gradient(&f, &grad, eps);
        // RT_tr = 1.5
        assert_relative_eq!(closed.get0([5, 0, 0]), -eps * 1.5 * 0.7);
        assert_relative_eq!(closed.get0([3, 2, 0]), -eps * 1.5 * (-0.4));
        assert_relative_eq!(closed.get1([3, 0, 0]), -eps * 1.5 * 0.2);
        // entries with alpha_1 = 0 at the top degree have no x-gradient source
        assert_abs_diff_eq!(closed.get0([0, 5, 0]), 0.0);
        assert_abs_diff_eq!(closed.get1([0, 3, 0]), 0.0);
    }
}
