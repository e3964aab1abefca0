//! `C^1_c` test functions on position x (3x3 matrix) space and compactly
//! supported vector fields.
//!
//! Matrix arguments are projection matrices; the Grassmannian is embedded in
//! the space of 3x3 matrices and `D*` is the ordinary matrix gradient.

use serde::Serialize;

use crate::exact::{ExactMat3, Side};
use crate::linalg::{add, frobenius, mat_sub, norm, scale, sub, Mat3, Vec3, ZERO_MAT};
use crate::scalar::Transition;
use crate::varifold::{Region, Sheet};
use crate::{Error, Result};

/// Value, spatial gradient `D` and matrix gradient `D*` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d: Vec3,
    pub dstar: Mat3,
}

impl Jet {
    pub const ZERO: Jet = Jet {
        value: 0.0,
        d: [0.0; 3],
        dstar: ZERO_MAT,
    };
}

pub trait TestFunction: Send + Sync {
    fn eval(&self, x: &Vec3, p: &Mat3) -> Jet;

    /// `(inner, outer)` radii of a shell containing the spatial support.
    fn support(&self) -> (f64, f64);

    fn id(&self) -> String;

    /// Radii where the function is only finitely smooth in `|x|`.
    fn radial_cuts(&self) -> Vec<f64> {
        Vec::new()
    }

    fn value(&self, x: &Vec3, p: &Mat3) -> f64 {
        self.eval(x, p).value
    }

    /// Region to integrate over.
    fn region(&self) -> Region {
        let (inner, outer) = self.support();
        Region::Shell { inner, outer }
    }
}

/// `amp * (1 - u^2)^power` with `u = (t - center) / half_width`, zero for `|u| >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolyBump {
    pub center: f64,
    pub half_width: f64,
    pub power: i32,
    pub amp: f64,
}

impl PolyBump {
    pub fn new(center: f64, half_width: f64, power: i32) -> Self {
        Self {
            center,
            half_width,
            power,
            amp: 1.0,
        }
    }

    /// Scaled to unit integral.
    pub fn normalized(center: f64, half_width: f64, power: i32) -> Self {
        let base: f64 = (1..=power).map(|j| 2.0 * j as f64 / (2.0 * j as f64 + 1.0)).product();
        Self {
            amp: 1.0 / (2.0 * base * half_width),
            ..Self::new(center, half_width, power)
        }
    }

    pub fn value_deriv(&self, t: f64) -> (f64, f64) {
        let u = (t - self.center) / self.half_width;
        if u.abs() >= 1.0 {
            return (0.0, 0.0);
        }
        let w = 1.0 - u * u;
        let v = self.amp * w.powi(self.power);
        let d = -self.amp * self.power as f64 * w.powi(self.power - 1) * 2.0 * u / self.half_width;
        (v, d)
    }

    pub fn lower(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.center + self.half_width
    }
}

/// Spatial factor of a separable test function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Spatial {
    /// Bump in `|x|`.
    Radial(PolyBump),
    /// `(1 - |x - c|^2 / r^2)^power`
    Ball { center: Vec3, radius: f64, power: i32 },
    /// `phi(x2) * psi(x1^2 + x3^2)`, concentrated along `L^+` (or `L^-`):
    /// `phi` is a unit-mass bump on `+-x2 in (1, 3)` and
    /// `psi(s) = (1 - 4 s^2)^power` on `|s| < 1/2`, so `psi(0) = 1`.
    Planar { side: Side, along: PolyBump, power: i32 },
}

impl Spatial {
    /// Unit-mass bump on `(1, 3)` along the axis side and transverse profile of power 4.
    pub fn planar(side: Side) -> Self {
        Spatial::Planar {
            side,
            along: PolyBump::normalized(2.0, 1.0, 4),
            power: 4,
        }
    }

    pub fn value_grad(&self, x: &Vec3) -> (f64, Vec3) {
        match self {
            Spatial::Radial(b) => {
                let r = norm(x);
                if r == 0.0 {
                    return (b.value_deriv(0.0).0, [0.0; 3]);
                }
                let (v, d) = b.value_deriv(r);
                (v, scale(x, d / r))
            }
            Spatial::Ball { center, radius, power } => {
                let y = sub(x, center);
                let w = 1.0 - (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]) / (radius * radius);
                if w <= 0.0 {
                    return (0.0, [0.0; 3]);
                }
                let v = w.powi(*power);
                let dw = -2.0 / (radius * radius);
                (v, scale(&y, *power as f64 * w.powi(power - 1) * dw))
            }
            Spatial::Planar { side, along, power } => {
                let t = side.sign() * x[1];
                let (a, da) = along.value_deriv(t);
                let s = x[0] * x[0] + x[2] * x[2];
                let w = 1.0 - 4.0 * s * s;
                if a == 0.0 && da == 0.0 || w <= 0.0 {
                    return (0.0, [0.0; 3]);
                }
                let psi = w.powi(*power);
                let dpsi = *power as f64 * w.powi(power - 1) * (-8.0 * s);
                (a * psi, [a * dpsi * 2.0 * x[0], side.sign() * da * psi, a * dpsi * 2.0 * x[2]])
            }
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            Spatial::Radial(b) => (b.lower().max(0.0), b.upper()),
            Spatial::Ball { center, radius, .. } => {
                let c = norm(center);
                ((c - radius).max(0.0), c + radius)
            }
            Spatial::Planar { along, .. } => (along.lower(), (along.upper().powi(2) + 0.5).sqrt()),
        }
    }
}

/// Factor depending on the plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Grassmann {
    One,
    /// `c0 + sum_jk c_jk P_jk`
    Linear { c0: f64, c: Mat3 },
    /// `c0 + sum_jk c_jk P_jk^2`
    Quadratic { c0: f64, c: Mat3 },
    /// `chi(|P - Q|_F^2 / eps^2)` with `chi(s) = (1 - s)^3` on `s < 1`.
    Bump { center: Mat3, eps: f64 },
}

impl Grassmann {
    pub fn value_grad(&self, p: &Mat3) -> (f64, Mat3) {
        match self {
            Grassmann::One => (1.0, ZERO_MAT),
            Grassmann::Linear { c0, c } => {
                let v = c0 + (0..3).flat_map(|j| (0..3).map(move |k| (j, k))).map(|(j, k)| c[j][k] * p[j][k]).sum::<f64>();
                (v, *c)
            }
            Grassmann::Quadratic { c0, c } => {
                let mut v = *c0;
                let mut g = ZERO_MAT;
                for j in 0..3 {
                    for k in 0..3 {
                        v += c[j][k] * p[j][k] * p[j][k];
                        g[j][k] = 2.0 * c[j][k] * p[j][k];
                    }
                }
                (v, g)
            }
            Grassmann::Bump { center, eps } => {
                let diff = mat_sub(p, center);
                let s = frobenius(&diff).powi(2) / (eps * eps);
                if s >= 1.0 {
                    return (0.0, ZERO_MAT);
                }
                let v = (1.0 - s).powi(3);
                let ds = -3.0 * (1.0 - s).powi(2);
                let mut g = ZERO_MAT;
                for j in 0..3 {
                    for k in 0..3 {
                        g[j][k] = ds * 2.0 * diff[j][k] / (eps * eps);
                    }
                }
                (v, g)
            }
        }
    }
}

/// Radial cutoff `psi_eps`: one on `B(0, eps)`, zero outside `B(0, 2 eps)`,
/// a quintic smooth-step in between (`|grad psi_eps| <= 1.875 / eps`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cutoff {
    pub eps: f64,
    /// `true` keeps `psi_eps * phi`, `false` keeps `(1 - psi_eps) * phi`.
    pub inner: bool,
}

impl Cutoff {
    pub fn value_grad(&self, x: &Vec3) -> (f64, Vec3) {
        let r = norm(x);
        let (psi, dpsi) = if r <= self.eps {
            (1.0, 0.0)
        } else if r >= 2.0 * self.eps {
            (0.0, 0.0)
        } else {
            let s = (r - self.eps) / self.eps;
            (1.0 - Transition::Quintic.eval(s), -Transition::Quintic.deriv(s) / self.eps)
        };
        let grad = if r > 0.0 { scale(x, dpsi / r) } else { [0.0; 3] };
        if self.inner {
            (psi, grad)
        } else {
            (1.0 - psi, scale(&grad, -1.0))
        }
    }
}

/// `spatial(x) * grassmann(P)`, optionally multiplied by a radial cutoff.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparableTest {
    pub id: String,
    pub spatial: Spatial,
    pub grassmann: Grassmann,
    pub cutoff: Option<Cutoff>,
}

impl SeparableTest {
    pub fn new(id: impl Into<String>, spatial: Spatial, grassmann: Grassmann) -> Self {
        Self {
            id: id.into(),
            spatial,
            grassmann,
            cutoff: None,
        }
    }

    pub fn with_cutoff(&self, cutoff: Cutoff) -> Self {
        Self {
            id: format!("{}*{}cut({})", self.id, if cutoff.inner { "" } else { "1-" }, cutoff.eps),
            cutoff: Some(cutoff),
            ..self.clone()
        }
    }
}

impl TestFunction for SeparableTest {
    fn eval(&self, x: &Vec3, p: &Mat3) -> Jet {
        let (mut s, mut ds) = self.spatial.value_grad(x);
        if let Some(c) = &self.cutoff {
            let (psi, dpsi) = c.value_grad(x);
            ds = add(&scale(&ds, psi), &scale(&dpsi, s));
            s *= psi;
        }
        if s == 0.0 && ds == [0.0; 3] {
            return Jet::ZERO;
        }
        let (f, df) = self.grassmann.value_grad(p);
        let mut dstar = df;
        for row in dstar.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        Jet {
            value: s * f,
            d: scale(&ds, f),
            dstar,
        }
    }

    fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.spatial.support();
        match &self.cutoff {
            Some(c) if c.inner => (lo, hi.min(2.0 * c.eps)),
            Some(c) => (lo.max(c.eps), hi),
            None => (lo, hi),
        }
    }

    fn id(&self) -> String {
        self.id.clone()
    }

    fn radial_cuts(&self) -> Vec<f64> {
        let mut cuts = Vec::new();
        if let Spatial::Radial(b) = &self.spatial {
            cuts.extend([b.lower(), b.upper()]);
        }
        if let Some(c) = &self.cutoff {
            cuts.extend([c.eps, 2.0 * c.eps]);
        }
        cuts
    }
}

/// The test function `phi(x2) psi(x1^2 + x3^2) f(P)` concentrated on
/// `L^side` near the plane `center`, after checking that `eps` separates
/// `center` from every other plane `P_j^+-` (`d > 2 eps`, chordal metric).
pub fn make_test_function(side: Side, center: &ExactMat3, eps: f64) -> Result<SeparableTest> {
    let table = crate::exact::ConormalTable::new();
    for sheet in Sheet::all() {
        for s in Side::BOTH {
            let other = table.plane(sheet.index(), s)?;
            if other == center {
                continue;
            }
            let mut d2 = crate::exact::QSqrt3::zero();
            for j in 0..3 {
                for k in 0..3 {
                    let e = &center.entries[j][k] - &other.entries[j][k];
                    d2 = &d2 + &(&e * &e);
                }
            }
            let distance = d2.to_f64().sqrt();
            if distance <= 2.0 * eps {
                return Err(Error::GrassmannRadius {
                    eps,
                    first: "center".into(),
                    second: format!("P_{}^{}", sheet.index(), s.symbol()),
                    distance,
                });
            }
        }
    }
    Ok(SeparableTest::new(
        format!("planar{}(eps={eps})", side.symbol()),
        Spatial::planar(side),
        Grassmann::Bump {
            center: center.to_f64(),
            eps,
        },
    ))
}

/// Compactly supported vector field `Y(x) = s(x) (c + B x)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VectorField {
    pub id: String,
    pub spatial: Spatial,
    pub constant: Vec3,
    pub linear: Mat3,
}

impl VectorField {
    pub fn constant(id: impl Into<String>, spatial: Spatial, c: Vec3) -> Self {
        Self {
            id: id.into(),
            spatial,
            constant: c,
            linear: ZERO_MAT,
        }
    }

    pub fn value(&self, x: &Vec3) -> Vec3 {
        let (s, _) = self.spatial.value_grad(x);
        scale(&self.base(x), s)
    }

    fn base(&self, x: &Vec3) -> Vec3 {
        add(&self.constant, &crate::linalg::mat_vec(&self.linear, x))
    }

    /// `J[i][j] = d_j Y_i`
    pub fn jacobian(&self, x: &Vec3) -> Mat3 {
        let (s, ds) = self.spatial.value_grad(x);
        let b = self.base(x);
        let mut j = ZERO_MAT;
        for i in 0..3 {
            for k in 0..3 {
                j[i][k] = ds[k] * b[i] + s * self.linear[i][k];
            }
        }
        j
    }

    pub fn support(&self) -> (f64, f64) {
        self.spatial.support()
    }

    pub fn region(&self) -> Region {
        let (inner, outer) = self.support();
        Region::Shell { inner, outer }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ConormalTable;

    fn planar() -> SeparableTest {
        let table = ConormalTable::new();
        make_test_function(Side::Plus, table.plane(1, Side::Plus).unwrap(), 0.5).unwrap()
    }

    #[test]
    fn grassmann_bump_examples() {
        let table = ConormalTable::new();
        let q = table.plane(1, Side::Plus).unwrap().to_f64();
        let f = Grassmann::Bump { center: q, eps: 0.5 };
        assert_eq!(f.value_grad(&q).0, 1.0);
        let far = table.plane(2, Side::Plus).unwrap().to_f64();
        assert_eq!(f.value_grad(&far).0, 0.0);
        let mut edge = q;
        edge[0][0] += 0.5;
        assert_eq!(f.value_grad(&edge).0, 0.0);
    }

    #[test]
    fn radius_too_large_names_the_pair() {
        let table = ConormalTable::new();
        match make_test_function(Side::Plus, table.plane(1, Side::Plus).unwrap(), 0.7) {
            Err(Error::GrassmannRadius { second, distance, .. }) => {
                assert!(second.starts_with("P_"));
                assert!((distance - 1.5f64.sqrt()).abs() < 1e-12);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn matrix_gradient_matches_differences() {
        let phi = planar();
        let x = [0.2, 1.7, 0.1];
        let table = ConormalTable::new();
        let mut p = table.plane(1, Side::Plus).unwrap().to_f64();
        p[0][1] += 0.05;
        p[2][2] -= 0.07;
        let jet = phi.eval(&x, &p);
        let h = 1e-6;
        for j in 0..3 {
            for k in 0..3 {
                let mut a = p;
                let mut b = p;
                a[j][k] += h;
                b[j][k] -= h;
                let fd = (phi.value(&x, &a) - phi.value(&x, &b)) / (2.0 * h);
                assert!((jet.dstar[j][k] - fd).abs() < 1e-5, "{j}{k}");
            }
        }
    }

    fn check_spatial_gradient(phi: &dyn TestFunction, x: Vec3, p: &Mat3) {
        let jet = phi.eval(&x, p);
        let h = 1e-6;
        for i in 0..3 {
            let mut a = x;
            let mut b = x;
            a[i] += h;
            b[i] -= h;
            let fd = (phi.value(&a, p) - phi.value(&b, p)) / (2.0 * h);
            assert!((jet.d[i] - fd).abs() < 1e-6, "{} d{i}: {} vs {fd}", phi.id(), jet.d[i]);
        }
    }

    #[test]
    fn spatial_gradients_match_differences() {
        let p = ConormalTable::new().plane(3, Side::Minus).unwrap().to_f64();
        let radial = SeparableTest::new("r", Spatial::Radial(PolyBump::new(2.0, 1.0, 4)), Grassmann::One);
        let ball = SeparableTest::new(
            "b",
            Spatial::Ball { center: [0.5, 1.0, -0.3], radius: 1.2, power: 3 },
            Grassmann::Linear { c0: 1.0, c: [[0.1, 0.0, 0.3], [0.0, 0.2, 0.0], [0.3, 0.0, -0.4]] },
        );
        check_spatial_gradient(&radial, [0.7, 1.1, -0.9], &p);
        check_spatial_gradient(&ball, [0.7, 1.1, -0.2], &p);
        check_spatial_gradient(&planar(), [0.2, 1.7, 0.1], &p);
        let cut = ball.with_cutoff(Cutoff { eps: 0.6, inner: true });
        check_spatial_gradient(&cut, [0.5, 0.7, 0.1], &p);
        let cut = ball.with_cutoff(Cutoff { eps: 0.6, inner: false });
        check_spatial_gradient(&cut, [0.5, 0.7, 0.1], &p);
    }

    #[test]
    fn cutoff_properties() {
        let c = Cutoff { eps: 0.3, inner: true };
        assert_eq!(c.value_grad(&[0.1, 0.1, 0.0]).0, 1.0);
        assert_eq!(c.value_grad(&[0.7, 0.0, 0.0]).0, 0.0);
        for k in 0..100 {
            let r = 0.3 + 0.3 * k as f64 / 100.0;
            let (v, g) = c.value_grad(&[r, 0.0, 0.0]);
            assert!((0.0..=1.0).contains(&v));
            assert!(norm(&g) <= 2.0 / 0.3);
        }
    }

    #[test]
    fn normalized_bump_has_unit_mass() {
        let b = PolyBump::normalized(2.0, 1.0, 4);
        let rule = crate::varifold::quadrature::gauss_legendre(12);
        let m = crate::varifold::quadrature::integrate_interval(&rule, 1.0, 3.0, 4, |t| b.value_deriv(t).0);
        assert!((m - 1.0).abs() < 1e-13);
    }

    #[test]
    fn vector_field_jacobian_matches_differences() {
        let y = VectorField {
            id: "y".into(),
            spatial: Spatial::Ball { center: [0.8, 0.8, 0.3], radius: 1.0, power: 3 },
            constant: [0.3, -1.0, 0.5],
            linear: [[0.2, 0.0, 0.1], [0.0, -0.3, 0.0], [0.4, 0.0, 0.1]],
        };
        let x = [0.5, 0.9, 0.2];
        let j = y.jacobian(&x);
        let h = 1e-6;
        for k in 0..3 {
            let mut a = x;
            let mut b = x;
            a[k] += h;
            b[k] -= h;
            let (ya, yb) = (y.value(&a), y.value(&b));
            for i in 0..3 {
                assert!((j[i][k] - (ya[i] - yb[i]) / (2.0 * h)).abs() < 1e-6);
            }
        }
    }
}
