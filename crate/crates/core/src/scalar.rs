//! The even bump profile `Phi` and the 1-homogeneous graph function
//!
//! ```text
//! g(x1, x2) = (x1 / sqrt 3) * integral of Phi over (-x2/x1, x2/x1)
//! ```
//!
//! on the half-plane `x1 > 0`, with closed-form gradient and Hessian.

use serde::{Deserialize, Serialize};

use crate::varifold::quadrature::{self, ChartWindow, QuadratureGrid};
use crate::{Error, Result};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Smallest `x1` accepted by the checked chart operations.
pub const CHART_GUARD: f64 = 1e-12;

/// Symmetric smooth-step polynomials with `S(0) = 0`, `S(1) = 1` and
/// `S(s) + S(1 - s) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transition {
    Cubic,
    Quintic,
    Septic,
}

impl Transition {
    /// Monomial coefficients of `S`, lowest degree first.
    fn coeffs(self) -> &'static [f64] {
        match self {
            Transition::Cubic => &[0.0, 0.0, 3.0, -2.0],
            Transition::Quintic => &[0.0, 0.0, 0.0, 10.0, -15.0, 6.0],
            Transition::Septic => &[0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0],
        }
    }

    pub fn eval(self, s: f64) -> f64 {
        self.coeffs().iter().rev().fold(0.0, |acc, c| acc * s + c)
    }

    /// Evaluated in the factored form `c (s (1 - s))^m`, which is exactly
    /// zero at both ends and never negative on `[0, 1]`.
    pub fn deriv(self, s: f64) -> f64 {
        let w = s * (1.0 - s);
        match self {
            Transition::Cubic => 6.0 * w,
            Transition::Quintic => 30.0 * w * w,
            Transition::Septic => 140.0 * w * w * w,
        }
    }

    /// `integral_0^s S`
    pub fn antiderivative(self, s: f64) -> f64 {
        let c = self.coeffs();
        (0..c.len())
            .rev()
            .fold(0.0, |acc, k| acc * s + c[k] / (k + 1) as f64)
            * s
    }

    /// `max S'`, attained at `s = 1/2`.
    pub fn max_slope(self) -> f64 {
        self.deriv(0.5)
    }
}

/// A plateau bump: `Phi = 1` on `[-a, a]`, a smooth-step descent to zero on
/// `a < |t| < b` and `Phi = 0` beyond, with `a + b = 1` so that the integral
/// is exactly one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BumpSpec {
    pub plateau_radius: f64,
    pub transition: Transition,
    pub normalization_tol: f64,
}

impl BumpSpec {
    pub fn new(plateau_radius: f64, transition: Transition) -> Result<Self> {
        if !(plateau_radius > 0.0 && plateau_radius < 0.5) {
            return Err(Error::InvalidBump(format!(
                "plateau radius {plateau_radius} must lie in (0, 1/2) so that a < 1 - a"
            )));
        }
        Ok(Self {
            plateau_radius,
            transition,
            normalization_tol: 1e-12,
        })
    }

    /// Default profile: quintic descent from `1/4` to `3/4`.
    pub fn quintic_plateau() -> Self {
        Self::new(0.25, Transition::Quintic).expect("valid")
    }

    /// Second compliant profile: septic descent from `0.1` to `0.9`.
    pub fn alt() -> Self {
        Self::new(0.1, Transition::Septic).expect("valid")
    }

    /// Negative control: normalised and even, but `sup |Phi'| = 18.75`.
    pub fn steep() -> Self {
        Self::new(0.45, Transition::Quintic).expect("valid")
    }

    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "quintic-plateau" => Ok(Self::quintic_plateau()),
            "alt" => Ok(Self::alt()),
            "steep" => Ok(Self::steep()),
            other => Err(Error::Config(format!(
                "unknown bump `{other}` (expected quintic-plateau, alt or steep)"
            ))),
        }
    }

    pub fn id(&self) -> String {
        if *self == Self::quintic_plateau() {
            "quintic-plateau".into()
        } else if *self == Self::alt() {
            "alt".into()
        } else if *self == Self::steep() {
            "steep".into()
        } else {
            format!("{:?}-plateau-{}", self.transition, self.plateau_radius).to_lowercase()
        }
    }

    pub fn support_radius(&self) -> f64 {
        1.0 - self.plateau_radius
    }

    fn width(&self) -> f64 {
        self.support_radius() - self.plateau_radius
    }

    /// `Phi(t)`
    pub fn value(&self, t: f64) -> f64 {
        let (a, b) = (self.plateau_radius, self.support_radius());
        let u = t.abs();
        if u <= a {
            1.0
        } else if u >= b {
            0.0
        } else {
            1.0 - self.transition.eval((u - a) / self.width())
        }
    }

    /// `Phi'(t)`
    pub fn deriv(&self, t: f64) -> f64 {
        let (a, b) = (self.plateau_radius, self.support_radius());
        let u = t.abs();
        if u <= a || u >= b {
            0.0
        } else {
            -t.signum() * self.transition.deriv((u - a) / self.width()) / self.width()
        }
    }

    /// `integral_0^v Phi` for any real `v` (odd in `v`).
    pub fn half_integral(&self, v: f64) -> f64 {
        let (a, b) = (self.plateau_radius, self.support_radius());
        let u = v.abs();
        let w = self.width();
        let magnitude = if u <= a {
            u
        } else if u >= b {
            0.5 * (a + b)
        } else {
            let s = (u - a) / w;
            a + w * (s - self.transition.antiderivative(s))
        };
        v.signum() * magnitude
    }

    /// Exact `sup |Phi'|`.
    pub fn sup_deriv(&self) -> f64 {
        self.transition.max_slope() / self.width()
    }

    /// Points where `Phi` changes its closed form (`-b, -a, a, b`).
    pub fn breakpoints(&self) -> [f64; 4] {
        let (a, b) = (self.plateau_radius, self.support_radius());
        [-b, -a, a, b]
    }

    /// Checks properties (a)-(f) by sampling `n` points per unit length and by
    /// Gauss quadrature for the normalisation.
    pub fn check_properties(&self, n: usize) -> Result<BumpCheck> {
        let fail = |property, detail: String| Err(Error::BumpProperty { property, detail });
        let samples = (0..=3 * n).map(|k| -1.5 + k as f64 / n as f64);
        let mut max_slope: f64 = 0.0;
        if self.value(0.0) != 1.0 {
            return fail('a', format!("Phi(0) = {}", self.value(0.0)));
        }
        for t in samples {
            let v = self.value(t);
            if !(0.0..=1.0).contains(&v) {
                return fail('a', format!("Phi({t}) = {v}"));
            }
            if t.abs() >= 1.0 && v != 0.0 {
                return fail('b', format!("Phi({t}) = {v}"));
            }
            if self.value(-t) != v {
                return fail('c', format!("Phi({t}) != Phi({})", -t));
            }
            let d = self.deriv(t);
            if t >= 0.0 && d > 0.0 {
                return fail('d', format!("Phi'({t}) = {d}"));
            }
            max_slope = max_slope.max(d.abs());
        }
        if max_slope > 4.0 {
            return fail('e', format!("sampled sup |Phi'| = {max_slope}"));
        }
        let mut cuts = vec![-1.0];
        cuts.extend(self.breakpoints());
        cuts.push(1.0);
        let rule = quadrature::gauss_legendre(16);
        let integral: f64 = cuts
            .windows(2)
            .map(|w| quadrature::integrate_interval(&rule, w[0], w[1], 8, |t| self.value(t)))
            .sum();
        if (integral - 1.0).abs() > self.normalization_tol {
            return fail('f', format!("integral = {integral}"));
        }
        Ok(BumpCheck {
            sampled_max_slope: max_slope,
            integral,
        })
    }
}

impl Default for BumpSpec {
    fn default() -> Self {
        Self::quintic_plateau()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BumpCheck {
    pub sampled_max_slope: f64,
    pub integral: f64,
}

/// The graph function `g` over `{x1 > 0}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScalarField {
    pub bump: BumpSpec,
}

/// Symmetric 2x2 Hessian `[[g11, g12], [g12, g22]]`.
pub type Hessian = [[f64; 2]; 2];

fn check_chart(x1: f64) -> Result<()> {
    if x1 >= CHART_GUARD {
        Ok(())
    } else {
        Err(Error::OutsideChart { x1 })
    }
}

impl ScalarField {
    pub fn new(bump: BumpSpec) -> Self {
        Self { bump }
    }

    pub fn value(&self, x1: f64, x2: f64) -> Result<f64> {
        check_chart(x1)?;
        Ok(self.value_unchecked(x1, x2))
    }

    pub fn grad(&self, x1: f64, x2: f64) -> Result<[f64; 2]> {
        check_chart(x1)?;
        Ok(self.grad_unchecked(x1, x2))
    }

    pub fn hess(&self, x1: f64, x2: f64) -> Result<Hessian> {
        check_chart(x1)?;
        Ok(self.hess_unchecked(x1, x2))
    }

    pub(crate) fn value_unchecked(&self, x1: f64, x2: f64) -> f64 {
        2.0 * x1 * self.bump.half_integral(x2 / x1) / SQRT_3
    }

    pub(crate) fn grad_unchecked(&self, x1: f64, x2: f64) -> [f64; 2] {
        let u = x2 / x1;
        let phi = self.bump.value(u);
        [
            (2.0 * self.bump.half_integral(u) - 2.0 * u * phi) / SQRT_3,
            2.0 * phi / SQRT_3,
        ]
    }

    pub(crate) fn hess_unchecked(&self, x1: f64, x2: f64) -> Hessian {
        let u = x2 / x1;
        let dphi = self.bump.deriv(u);
        let g11 = 2.0 * x2 * x2 * dphi / (x1 * x1 * x1 * SQRT_3);
        let g12 = -2.0 * x2 * dphi / (x1 * x1 * SQRT_3);
        let g22 = 2.0 * dphi / (x1 * SQRT_3);
        [[g11, g12], [g12, g22]]
    }

    /// Angles (in the chart) where the closed forms switch: the bump
    /// breakpoints `x2/x1 = +-a, +-b` and the cone boundary `|x2| = x1`.
    pub fn angular_breakpoints(&self) -> Vec<f64> {
        let a = self.bump.plateau_radius.atan();
        let b = self.bump.support_radius().atan();
        let q = std::f64::consts::FRAC_PI_4;
        let mut cuts = vec![-q, -b, -a, 0.0, a, b, q];
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup();
        cuts
    }

    /// Quadrature of `|D^2 g|` (Frobenius) over a chart window, together with
    /// the value on the next finer grid.
    pub fn hess_mass(&self, window: ChartWindow, grid: &QuadratureGrid, tol: f64) -> Result<HessMass> {
        let integrand = |x1: f64, x2: f64| {
            let h = self.hess_unchecked(x1, x2);
            (h[0][0] * h[0][0] + 2.0 * h[0][1] * h[0][1] + h[1][1] * h[1][1]).sqrt()
        };
        let cuts = self.angular_breakpoints();
        let value = quadrature::integrate_chart(&window, &cuts, grid, integrand)?;
        let refined = quadrature::integrate_chart(&window, &cuts, &grid.refined(), integrand)?;
        let converged = (value - refined).abs() <= tol * refined.abs().max(1e-8);
        Ok(HessMass {
            value,
            refined,
            converged,
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HessMass {
    pub value: f64,
    pub refined: f64,
    pub converged: bool,
}

impl HessMass {
    pub fn require_converged(self, level: u32) -> Result<f64> {
        if self.converged {
            Ok(self.refined)
        } else {
            Err(Error::NotConverged {
                level,
                coarse: self.value,
                refined: self.refined,
            })
        }
    }
}
