//! Tangent projection of a graph `x3 = g(x1, x2)`, its chart derivatives,
//! the weak second fundamental form `A_ijk = T_il d_l T_jk` and the mean
//! curvature `H_i = A_jij`.

use serde::Serialize;

use crate::linalg::{conjugate, mat_vec, Mat3, Tensor3, Vec3, ZERO_MAT, ZERO_TENSOR};
use crate::scalar::Hessian;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangentFrame {
    /// Orthogonal projection onto the tangent plane.
    pub t: Mat3,
    /// `dt[l] = d_l T` for the chart directions `l = 1, 2`.
    pub dt: [Mat3; 2],
    pub a: Tensor3,
    pub h: Vec3,
}

/// Tangent projection of the graph with gradient `grad`.
pub fn projection_from_gradient(grad: [f64; 2]) -> Mat3 {
    let p = [grad[0], grad[1]];
    let inv = 1.0 / (1.0 + p[0] * p[0] + p[1] * p[1]);
    let mut t = ZERO_MAT;
    for i in 0..2 {
        for j in 0..2 {
            t[i][j] = if i == j { 1.0 } else { 0.0 } - p[i] * p[j] * inv;
        }
        t[i][2] = p[i] * inv;
        t[2][i] = p[i] * inv;
    }
    t[2][2] = 1.0 - inv;
    t
}

/// `d_l T_jk` for `l = 1, 2` from the gradient and Hessian of `g`.
///
/// The `(3,3)` block is `d_l |grad g|^2 / (1 + |grad g|^2)^2`, i.e.
/// `2 sum_m g_m g_ml / (1 + |grad g|^2)^2`.
pub fn projection_deriv(grad: [f64; 2], hess: Hessian) -> [Mat3; 2] {
    let p = grad;
    let q = 1.0 + p[0] * p[0] + p[1] * p[1];
    let (inv, inv2) = (1.0 / q, 1.0 / (q * q));
    let mut out = [ZERO_MAT; 2];
    for (l, dl) in out.iter_mut().enumerate() {
        // sum_m g_m g_ml
        let s = p[0] * hess[0][l] + p[1] * hess[1][l];
        for j in 0..2 {
            for k in 0..2 {
                dl[j][k] = -(hess[l][j] * p[k] + p[j] * hess[l][k]) * inv + 2.0 * p[j] * p[k] * s * inv2;
            }
            let v = hess[l][j] * inv - 2.0 * p[j] * s * inv2;
            dl[j][2] = v;
            dl[2][j] = v;
        }
        dl[2][2] = 2.0 * s * inv2;
    }
    out
}

/// `A_ijk = sum_{l=1,2} T_il d_l T_jk`; the ambient extension of `T` is
/// constant in `x3`, so the third partial vanishes.
pub fn curvature_tensor(t: &Mat3, dt: &[Mat3; 2]) -> Tensor3 {
    let mut a = ZERO_TENSOR;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                a[i][j][k] = t[i][0] * dt[0][j][k] + t[i][1] * dt[1][j][k];
            }
        }
    }
    a
}

/// `H_l = sum_j A_jlj`
pub fn mean_curvature(a: &Tensor3) -> Vec3 {
    let mut h = [0.0; 3];
    for (l, hl) in h.iter_mut().enumerate() {
        *hl = (0..3).map(|j| a[j][l][j]).sum();
    }
    h
}

impl TangentFrame {
    pub fn from_derivatives(grad: [f64; 2], hess: Hessian) -> Self {
        let t = projection_from_gradient(grad);
        let dt = projection_deriv(grad, hess);
        let a = curvature_tensor(&t, &dt);
        let h = mean_curvature(&a);
        Self { t, dt, a, h }
    }

    /// Flat frame with the given tangent projection.
    pub fn flat(t: Mat3) -> Self {
        Self {
            t,
            dt: [ZERO_MAT; 2],
            a: ZERO_TENSOR,
            h: [0.0; 3],
        }
    }

    /// Frame of the image surface under the orthogonal map `q`.
    pub fn pushforward(&self, q: &Mat3) -> Self {
        let mut a = ZERO_TENSOR;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut acc = 0.0;
                    for x in 0..3 {
                        for y in 0..3 {
                            for z in 0..3 {
                                acc += q[i][x] * q[j][y] * q[k][z] * self.a[x][y][z];
                            }
                        }
                    }
                    a[i][j][k] = acc;
                }
            }
        }
        Self {
            t: conjugate(q, &self.t),
            dt: [conjugate(q, &self.dt[0]), conjugate(q, &self.dt[1])],
            a,
            h: mat_vec(q, &self.h),
        }
    }

    /// Rescales the curvature quantities for the point `r` times further out
    /// along the same chart ray (`g` is 1-homogeneous, so `T` is constant on
    /// rays and its derivatives scale like `1/r`).
    pub fn scaled(&self, inv_r: f64) -> Self {
        let mut out = *self;
        for m in out.dt.iter_mut() {
            for row in m.iter_mut() {
                for v in row.iter_mut() {
                    *v *= inv_r;
                }
            }
        }
        for v in out.a.iter_mut().flatten().flatten() {
            *v *= inv_r;
        }
        for v in out.h.iter_mut() {
            *v *= inv_r;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ConormalTable, Isometry, Side};
    use crate::linalg::{frobenius, identity, mat_mul, mat_sub, max_abs, tensor_max_abs, trace};
    use crate::scalar::{ScalarField, SQRT_3};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn horizontal_plane() {
        let t = projection_from_gradient([0.0, 0.0]);
        assert_eq!(t, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
    }

    #[test]
    fn planar_gradient_matches_exact_plane() {
        let t = projection_from_gradient([1.0 / SQRT_3, 0.0]);
        let exact = ConormalTable::new().plane(1, Side::Plus).unwrap().to_f64();
        assert!(max_abs(&mat_sub(&t, &exact)) <= 1e-12);
    }

    #[test]
    fn projection_is_idempotent() {
        let t = projection_from_gradient([0.4, -0.7]);
        assert!(max_abs(&mat_sub(&mat_mul(&t, &t), &t)) <= 1e-12);
        assert!((trace(&t) - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn zero_hessian_gives_zero_derivative() {
        let dt = projection_deriv([0.3, 0.2], [[0.0; 2]; 2]);
        assert_eq!(dt, [ZERO_MAT; 2]);
    }

    #[test]
    fn derivative_is_symmetric() {
        let dt = projection_deriv([0.3, -1.1], [[0.5, -0.2], [-0.2, 1.7]]);
        for l in 0..2 {
            for j in 0..3 {
                assert_eq!(dt[l][j][2], dt[l][2][j]);
            }
        }
    }

    #[test]
    fn derivative_matches_chain_rule_differences() {
        let g = ScalarField::default();
        let (x1, x2, h) = (1.0, 0.5, 1e-4);
        let frame = TangentFrame::from_derivatives(g.grad(x1, x2).unwrap(), g.hess(x1, x2).unwrap());
        let t_at = |a: f64, b: f64| projection_from_gradient(g.grad(a, b).unwrap());
        let fd = [
            mat_sub(&t_at(x1 + h, x2), &t_at(x1 - h, x2)),
            mat_sub(&t_at(x1, x2 + h), &t_at(x1, x2 - h)),
        ];
        for l in 0..2 {
            for j in 0..3 {
                for k in 0..3 {
                    assert!((frame.dt[l][j][k] - fd[l][j][k] / (2.0 * h)).abs() <= 1e-5);
                }
            }
        }
    }

    #[test]
    fn curvature_vanishes_on_planar_region() {
        let g = ScalarField::default();
        let frame = TangentFrame::from_derivatives(g.grad(1.0, 2.0).unwrap(), g.hess(1.0, 2.0).unwrap());
        assert_eq!(tensor_max_abs(&frame.a), 0.0);
        assert_eq!(frame.h, [0.0; 3]);
    }

    #[test]
    fn curvature_bounded_by_hessian() {
        // Constant calibrated on seed 7 (observed max ratio ~1.62) and frozen.
        const C: f64 = 2.0;
        let g = ScalarField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x1: f64 = rng.gen_range(0.01..3.0);
            let x2: f64 = rng.gen_range(-x1..x1);
            let hess = g.hess(x1, x2).unwrap();
            let frame = TangentFrame::from_derivatives(g.grad(x1, x2).unwrap(), hess);
            let hn = (hess[0][0].powi(2) + 2.0 * hess[0][1].powi(2) + hess[1][1].powi(2)).sqrt();
            assert!(tensor_max_abs(&frame.a) <= C * hn + 1e-14);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        assert!((frame.a[i][j][k] - frame.a[i][k][j]).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn pushforward_identity_and_rho_cubed() {
        let g = ScalarField::default();
        let frame = TangentFrame::from_derivatives(g.grad(1.0, 0.3).unwrap(), g.hess(1.0, 0.3).unwrap());
        assert_eq!(frame.pushforward(&identity()), frame);
        let rho = Isometry::Rho.matrix().to_f64();
        let back = frame.pushforward(&rho).pushforward(&rho).pushforward(&rho);
        assert!(frobenius(&mat_sub(&back.t, &frame.t)) <= 1e-12);
        assert!(tensor_max_abs(&{
            let mut d = back.a;
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        d[i][j][k] -= frame.a[i][j][k];
                    }
                }
            }
            d
        }) <= 1e-12);
    }

    #[test]
    fn pushforward_of_planar_tangent_is_rotated_plane() {
        let g = ScalarField::default();
        let table = ConormalTable::new();
        let frame = TangentFrame::from_derivatives(g.grad(1.0, 2.0).unwrap(), g.hess(1.0, 2.0).unwrap());
        let rho = Isometry::Rho.matrix().to_f64();
        let pushed = frame.pushforward(&rho);
        let exact = table.plane(3, Side::Plus).unwrap().to_f64();
        assert!(max_abs(&mat_sub(&pushed.t, &exact)) <= 1e-12);
    }
}
