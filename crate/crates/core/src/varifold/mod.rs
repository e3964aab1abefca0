//! The six sheets of `V`, their half-sheets, regions of space, and the
//! surface and line quadrature used by every weak identity.

pub mod mesh;
pub mod quadrature;
pub mod region;
pub mod sheets;

use serde::Serialize;

use crate::exact::{ConormalTable, Isometry, Side};
use crate::frame::TangentFrame;
use crate::linalg::{mat_vec, Mat3, Vec3};
use crate::scalar::{BumpSpec, ScalarField, CHART_GUARD};
use crate::{Error, Result};

pub use quadrature::{Execution, QuadratureGrid};
pub use region::Region;
pub use sheets::{HalfSheet, HalfSheetSet, Selection, Sheet};

/// Position, tangent data and area element at one point of a sheet.
#[derive(Clone, Copy, Debug)]
pub struct SurfacePoint {
    pub chart: [f64; 2],
    pub position: Vec3,
    pub frame: TangentFrame,
    /// `sqrt(1 + |grad g|^2)`
    pub jacobian: f64,
}

/// A boundary curve of the half-sheets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundaryCurve {
    /// `L^+-`, the half of the x2-axis with `+-x2 > 0`.
    L(Side),
    /// The ray `T_k`, `k` in `1..=3`.
    Ray(usize),
}

impl BoundaryCurve {
    pub const ALL: [BoundaryCurve; 5] = [
        BoundaryCurve::L(Side::Plus),
        BoundaryCurve::L(Side::Minus),
        BoundaryCurve::Ray(1),
        BoundaryCurve::Ray(2),
        BoundaryCurve::Ray(3),
    ];

    pub fn direction(self) -> Vec3 {
        match self {
            BoundaryCurve::L(side) => [0.0, side.sign(), 0.0],
            BoundaryCurve::Ray(k) => region::ray_directions()[k - 1],
        }
    }

    pub fn name(self) -> String {
        match self {
            BoundaryCurve::L(side) => format!("L{}", side.symbol()),
            BoundaryCurve::Ray(k) => format!("T{k}"),
        }
    }
}

/// The configuration for one bump choice: graph function, exact tables
/// and their float images.
#[derive(Clone, Debug)]
pub struct Model {
    pub field: ScalarField,
    pub table: ConormalTable,
    isometries: [Mat3; 6],
    nu: [[Vec3; 2]; 6],
    eta: [[Vec3; 2]; 6],
    planes: [[Mat3; 2]; 6],
}

impl Model {
    pub fn new(bump: BumpSpec) -> Self {
        let table = ConormalTable::new();
        let isometries = std::array::from_fn(|i| {
            Isometry::word_matrix(Sheet::new(i + 1).expect("index").word()).to_f64()
        });
        let nu = std::array::from_fn(|i| {
            Side::BOTH.map(|s| table.conormal(i + 1, s).expect("index").to_f64())
        });
        let eta = std::array::from_fn(|i| Side::BOTH.map(|s| table.eta(i + 1, s).expect("index").to_f64()));
        let planes = std::array::from_fn(|i| Side::BOTH.map(|s| table.plane(i + 1, s).expect("index").to_f64()));
        Self {
            field: ScalarField::new(bump),
            table,
            isometries,
            nu,
            eta,
            planes,
        }
    }

    pub fn bump(&self) -> &BumpSpec {
        &self.field.bump
    }

    pub fn isometry(&self, sheet: Sheet) -> &Mat3 {
        &self.isometries[sheet.index() - 1]
    }

    pub fn nu(&self, sheet: Sheet, side: Side) -> Vec3 {
        self.nu[sheet.index() - 1][side.index()]
    }

    pub fn eta(&self, sheet: Sheet, side: Side) -> Vec3 {
        self.eta[sheet.index() - 1][side.index()]
    }

    pub fn plane(&self, sheet: Sheet, side: Side) -> Mat3 {
        self.planes[sheet.index() - 1][side.index()]
    }

    /// Point of sheet `i` over the chart point `(x1, x2)` of `Sigma_1`.
    pub fn sheet_point(&self, sheet: Sheet, x1: f64, x2: f64) -> Result<SurfacePoint> {
        if x1 < CHART_GUARD {
            return Err(Error::OutsideChart { x1 });
        }
        let g = &self.field;
        let grad = g.grad_unchecked(x1, x2);
        let frame = TangentFrame::from_derivatives(grad, g.hess_unchecked(x1, x2));
        let q = self.isometry(sheet);
        Ok(SurfacePoint {
            chart: [x1, x2],
            position: mat_vec(q, &[x1, x2, g.value_unchecked(x1, x2)]),
            frame: frame.pushforward(q),
            jacobian: (1.0 + grad[0] * grad[0] + grad[1] * grad[1]).sqrt(),
        })
    }

    /// `integral f dmu` over `half ∩ region`.
    pub fn integrate_half_sheet<const N: usize, F>(&self, half: HalfSheet, region: &Region, grid: &QuadratureGrid, f: F) -> Result<[f64; N]>
    where
        F: Fn(&SurfacePoint) -> [f64; N] + Sync + Send,
    {
        let q = std::f64::consts::FRAC_PI_2;
        let (lo, hi) = if half.chart_sign() > 0.0 { (0.0, q) } else { (-q, 0.0) };
        self.integrate_chart_sector(half.sheet, lo, hi, region, grid, f)
    }

    /// `integral f dmu` over a full sheet intersected with `region`.
    pub fn integrate_sheet<const N: usize, F>(&self, sheet: Sheet, region: &Region, grid: &QuadratureGrid, f: F) -> Result<[f64; N]>
    where
        F: Fn(&SurfacePoint) -> [f64; N] + Sync + Send,
    {
        let q = std::f64::consts::FRAC_PI_2;
        self.integrate_chart_sector(sheet, -q, q, region, grid, f)
    }

    /// Sum of [`Self::integrate_half_sheet`] over the members of `sel`.
    pub fn integrate_selection<const N: usize, F>(&self, sel: Selection, region: &Region, grid: &QuadratureGrid, f: F) -> Result<[f64; N]>
    where
        F: Fn(&SurfacePoint) -> [f64; N] + Sync + Send,
    {
        let mut acc = [0.0; N];
        for half in sel.members() {
            let v = self.integrate_half_sheet(half, region, grid, &f)?;
            for k in 0..N {
                acc[k] += v[k];
            }
        }
        Ok(acc)
    }

    fn integrate_chart_sector<const N: usize, F>(&self, sheet: Sheet, lo: f64, hi: f64, region: &Region, grid: &QuadratureGrid, f: F) -> Result<[f64; N]>
    where
        F: Fn(&SurfacePoint) -> [f64; N] + Sync + Send,
    {
        let (r_in, r_out) = match region.radial_bounds() {
            (lo, Some(hi)) => (lo, hi),
            (_, None) => return Err(Error::Unbounded),
        };
        // Surface the first membership error (e.g. origin in a cone) up front.
        region.contains(&[1.0, 0.0, 0.0]).map(|_| ())?;
        let q = *self.isometry(sheet);
        let rule = grid.rule();
        let nodes = grid.angular_nodes(lo, hi, &self.field.angular_breakpoints());
        let g = &self.field;
        Ok(grid.angular_sum(&nodes, |theta| {
            let (s, c) = theta.sin_cos();
            let grad = g.grad_unchecked(c, s);
            let height = g.value_unchecked(c, s);
            let unit = TangentFrame::from_derivatives(grad, g.hess_unchecked(c, s)).pushforward(&q);
            let jacobian = (1.0 + grad[0] * grad[0] + grad[1] * grad[1]).sqrt();
            let direction = mat_vec(&q, &[c, s, height]);
            let stretch = (1.0 + height * height).sqrt();
            grid.radial_sum(&rule, r_in / stretch, r_out / stretch, |r, _| {
                let position = [direction[0] * r, direction[1] * r, direction[2] * r];
                if !region.contains(&position).unwrap_or(false) {
                    return None;
                }
                let point = SurfacePoint {
                    chart: [r * c, r * s],
                    position,
                    frame: unit.scaled(1.0 / r),
                    jacobian,
                };
                let v = f(&point);
                let mut out = [0.0; N];
                for k in 0..N {
                    out[k] = v[k] * jacobian * r;
                }
                Some(out)
            })
        }))
    }

    /// `integral_{curve ∩ {s0 < |x| < s1}} f dH^1` with the composite Gauss rule.
    pub fn integrate_line<const N: usize, F>(&self, curve: BoundaryCurve, s0: f64, s1: f64, grid: &QuadratureGrid, f: F) -> [f64; N]
    where
        F: Fn(&Vec3) -> [f64; N],
    {
        let d = curve.direction();
        let rule = grid.rule();
        grid.radial_sum(&rule, s0, s1, |s, _| Some(f(&[d[0] * s, d[1] * s, d[2] * s])))
    }
}

impl Default for Model {
    fn default() -> Self {
        Self::new(BumpSpec::default())
    }
}
