//! First variation, distributional boundary and the curvature functional
//! `B`, each with its closed form along the boundary curves.

use serde::Serialize;

use super::test_function::{Cutoff, Jet, SeparableTest, TestFunction, VectorField};
use crate::exact::{ExactMat3, ExactVec3};
use crate::linalg::{dot, max_abs, norm, scale, tensor_max_abs, Vec3};
use crate::varifold::{BoundaryCurve, Model, QuadratureGrid, Region, Selection, SurfacePoint};
use crate::{Error, Result};

/// `[T_lj D_j phi + D*_jk phi A_ljk + phi H_l]_l` at one surface point.
pub fn curvature_integrand(jet: &Jet, p: &SurfacePoint) -> Vec3 {
    let f = &p.frame;
    let mut out = [0.0; 3];
    for l in 0..3 {
        let mut v = jet.value * f.h[l];
        for j in 0..3 {
            v += f.t[l][j] * jet.d[j];
            for k in 0..3 {
                v += jet.dstar[j][k] * f.a[l][j][k];
            }
        }
        out[l] = v;
    }
    out
}

fn shells(lo: f64, hi: f64, cuts: &[f64]) -> Vec<Region> {
    let mut points = vec![lo];
    points.extend(cuts.iter().copied().filter(|c| *c > lo && *c < hi));
    points.push(hi);
    points.sort_by(f64::total_cmp);
    points.windows(2).map(|w| Region::Shell { inner: w[0], outer: w[1] }).collect()
}

fn kinks(phi: &dyn TestFunction) -> Vec<f64> {
    phi.radial_cuts()
}

/// `B(sel, phi)` by surface quadrature.
pub fn curvature_residual(model: &Model, sel: Selection, phi: &dyn TestFunction, grid: &QuadratureGrid) -> Result<Vec3> {
    let (lo, hi) = phi.support();
    let mut acc = [0.0; 3];
    for region in shells(lo, hi, &kinks(phi)) {
        let v = model.integrate_selection(sel, &region, grid, |p| {
            let jet = phi.eval(&p.position, &p.frame.t);
            if jet == Jet::ZERO {
                return [0.0; 3];
            }
            curvature_integrand(&jet, p)
        })?;
        for l in 0..3 {
            acc[l] += v[l];
        }
    }
    Ok(acc)
}

/// `integral phi d(boundary of sel) = -B(sel, phi)`.
pub fn boundary_pairing(model: &Model, sel: Selection, phi: &dyn TestFunction, grid: &QuadratureGrid) -> Result<Vec3> {
    Ok(scale(&curvature_residual(model, sel, phi, grid)?, -1.0))
}

/// One boundary atom: a curve, the plane carried along it and the exact sum
/// of the conormals of the half-sheets of a selection meeting there.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryAtom {
    pub curve: BoundaryCurve,
    pub plane: ExactMat3,
    pub conormal: ExactVec3,
}

/// Atoms of `sel` grouped by `(curve, plane)`; atoms whose conormals cancel
/// exactly are kept with a zero conormal.
pub fn boundary_atoms(model: &Model, sel: Selection) -> Result<Vec<BoundaryAtom>> {
    let table = &model.table;
    let mut atoms: Vec<BoundaryAtom> = Vec::new();
    let mut push = |curve: BoundaryCurve, plane: ExactMat3, v: &ExactVec3| -> Result<()> {
        if let Some(a) = atoms.iter_mut().find(|a| a.curve == curve && a.plane == plane) {
            a.conormal = a.conormal.checked_add(v)?;
        } else {
            atoms.push(BoundaryAtom { curve, plane, conormal: v.clone() });
        }
        Ok(())
    };
    for half in sel.members() {
        let i = half.sheet.index();
        push(BoundaryCurve::L(half.side), table.plane(i, half.side)?.clone(), table.conormal(i, half.side)?)?;
        push(BoundaryCurve::Ray(half.sheet.ray()), table.ray_tangent_plane(i)?, table.eta(i, half.side)?)?;
    }
    Ok(atoms)
}

/// `-sum_atoms nu * integral_curve phi(x, P) dH^1`, for any half-sheet set.
pub fn boundary_closed_form_halves(model: &Model, sel: Selection, phi: &dyn TestFunction, grid: &QuadratureGrid) -> Result<Vec3> {
    let (lo, hi) = phi.support();
    let cuts = kinks(phi);
    let mut acc = [0.0; 3];
    for atom in boundary_atoms(model, sel)? {
        if atom.conormal.is_zero() {
            continue;
        }
        let plane = atom.plane.to_f64();
        let mut line = 0.0;
        for region in shells(lo, hi, &cuts) {
            if let Region::Shell { inner, outer } = region {
                line += model.integrate_line(atom.curve, inner, outer, grid, |x| [phi.value(x, &plane)])[0];
            }
        }
        let nu = atom.conormal.to_f64();
        for l in 0..3 {
            acc[l] -= nu[l] * line;
        }
    }
    Ok(acc)
}

/// Closed form of `B(sel, phi)` for a union of full sheets: only the
/// `L^+-` atoms remain. Selections with an unmatched half-sheet are rejected.
pub fn boundary_closed_form(model: &Model, sel: Selection, phi: &dyn TestFunction, grid: &QuadratureGrid) -> Result<Vec3> {
    if let Some(h) = sel.unmatched() {
        return Err(Error::UnmatchedHalfSheet(h.to_string()));
    }
    boundary_closed_form_halves(model, sel, phi, grid)
}

/// `delta(sel)(Y) = integral div_T Y dmu`.
pub fn first_variation(model: &Model, sel: Selection, y: &VectorField, grid: &QuadratureGrid) -> Result<f64> {
    let v = model.integrate_selection(sel, &y.region(), grid, |p| [div_t(y, p)])?;
    Ok(v[0])
}

fn div_t(y: &VectorField, p: &SurfacePoint) -> f64 {
    let j = y.jacobian(&p.position);
    let t = &p.frame.t;
    (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).map(|(a, b)| t[a][b] * j[a][b]).sum()
}

/// `-integral <H, Y> - integral div_T Y` over `sel`.
pub fn distributional_boundary(model: &Model, sel: Selection, y: &VectorField, grid: &QuadratureGrid) -> Result<f64> {
    let v = model.integrate_selection(sel, &y.region(), grid, |p| {
        let value = y.value(&p.position);
        [-dot(&p.frame.h, &value) - div_t(y, p)]
    })?;
    Ok(v[0])
}

/// `sum_halves integral_{L^+-} <Y, nu> + integral_{T_k} <Y, eta>`, grouped
/// by curve with exact conormal sums.
pub fn distributional_boundary_closed_form(model: &Model, sel: Selection, y: &VectorField, grid: &QuadratureGrid) -> Result<f64> {
    let table = &model.table;
    let mut by_curve: Vec<(BoundaryCurve, ExactVec3)> = Vec::new();
    for half in sel.members() {
        let i = half.sheet.index();
        for (curve, v) in [
            (BoundaryCurve::L(half.side), table.conormal(i, half.side)?),
            (BoundaryCurve::Ray(half.sheet.ray()), table.eta(i, half.side)?),
        ] {
            match by_curve.iter_mut().find(|(c, _)| *c == curve) {
                Some((_, acc)) => *acc = acc.checked_add(v)?,
                None => by_curve.push((curve, v.clone())),
            }
        }
    }
    let (lo, hi) = y.support();
    let mut total = 0.0;
    for (curve, v) in by_curve {
        if v.is_zero() {
            continue;
        }
        let nu = v.to_f64();
        total += model.integrate_line(curve, lo, hi, grid, |x| [dot(&y.value(x), &nu)])[0];
    }
    Ok(total)
}

/// One line of a residual report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub selection: String,
    pub test_function_id: String,
    pub grid_level: u32,
    pub residual: Vec3,
    pub closed_form: Vec3,
}

impl ResidualRecord {
    pub fn error(&self) -> f64 {
        let d = [
            self.residual[0] - self.closed_form[0],
            self.residual[1] - self.closed_form[1],
            self.residual[2] - self.closed_form[2],
        ];
        norm(&d)
    }

    /// Error relative to `max(1, |closed form|)`.
    pub fn relative_error(&self) -> f64 {
        self.error() / norm(&self.closed_form).max(1.0)
    }
}

pub fn residual_record(model: &Model, sel: Selection, phi: &dyn TestFunction, grid: &QuadratureGrid) -> Result<ResidualRecord> {
    Ok(ResidualRecord {
        selection: sel.to_string(),
        test_function_id: phi.id(),
        grid_level: grid.level,
        residual: curvature_residual(model, sel, phi, grid)?,
        closed_form: boundary_closed_form_halves(model, sel, phi, grid)?,
    })
}

/// One radius of the cutoff study near the cone vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutoffRow {
    pub eps: f64,
    /// `B(sel, psi_eps phi)`
    pub inner_residual: Vec3,
    pub inner_norm: f64,
    /// `(2n/eps sup|phi| + n sup|D phi|) mass + (n^2 sup|D* phi| + n sup|phi|) curvature_mass`
    pub bound: f64,
    /// `|sel|(B(0, 2 eps))`
    pub mass: f64,
    /// `integral_{B(0, 2 eps)} max_ijk |A_ijk| dmu`
    pub curvature_mass: f64,
    /// `B(sel, (1 - psi_eps) phi)`
    pub outer_residual: Vec3,
    /// Closed form of `B(sel, phi)`
    pub closed_form: Vec3,
    /// `|outer_residual - closed_form|`
    pub outer_gap: f64,
}

/// Sup of `|phi|`, `max|D phi|`, `max|D* phi|` over a sample of `sel` inside
/// the chart disc of radius `radius` (a superset of `sel ∩ B(0, radius)`).
fn sample_sups(model: &Model, sel: Selection, phi: &dyn TestFunction, radius: f64) -> Result<[f64; 3]> {
    let mut sups = [0.0f64; 3];
    let (na, nr) = (64, 24);
    for half in sel.members() {
        for ia in 0..na {
            let theta = half.chart_sign() * std::f64::consts::FRAC_PI_2 * (ia as f64 + 0.5) / na as f64;
            let (s, c) = theta.sin_cos();
            for ir in 0..nr {
                let r = radius * (ir as f64 + 0.5) / nr as f64;
                let p = model.sheet_point(half.sheet, r * c, r * s)?;
                let jet = phi.eval(&p.position, &p.frame.t);
                sups[0] = sups[0].max(jet.value.abs());
                sups[1] = sups[1].max(jet.d.iter().fold(0.0f64, |m, v| m.max(v.abs())));
                sups[2] = sups[2].max(max_abs(&jet.dstar));
            }
        }
    }
    Ok(sups)
}

/// `B` localized at the vertex by `psi_eps` for each radius in `eps`.
pub fn cutoff_study(model: &Model, sel: Selection, phi: &SeparableTest, eps: &[f64], grid: &QuadratureGrid) -> Result<Vec<CutoffRow>> {
    let closed_form = boundary_closed_form_halves(model, sel, phi, grid)?;
    let n = 3.0;
    eps.iter()
        .map(|&e| {
            if !(e > 0.0 && e.is_finite()) {
                return Err(Error::Config(format!("cutoff radius {e} must be positive")));
            }
            let inner = phi.with_cutoff(Cutoff { eps: e, inner: true });
            let outer = phi.with_cutoff(Cutoff { eps: e, inner: false });
            let inner_residual = curvature_residual(model, sel, &inner, grid)?;
            let outer_residual = curvature_residual(model, sel, &outer, grid)?;
            let ball = Region::ball(2.0 * e);
            let masses = model.integrate_selection(sel, &ball, grid, |p| [1.0, tensor_max_abs(&p.frame.a)])?;
            let [sup, sup_d, sup_dstar] = sample_sups(model, sel, phi, 2.0 * e)?;
            let bound = (2.0 * n / e * sup + n * sup_d) * masses[0] + (n * n * sup_dstar + n * sup) * masses[1];
            let gap = [
                outer_residual[0] - closed_form[0],
                outer_residual[1] - closed_form[1],
                outer_residual[2] - closed_form[2],
            ];
            Ok(CutoffRow {
                eps: e,
                inner_norm: norm(&inner_residual),
                inner_residual,
                bound,
                mass: masses[0],
                curvature_mass: masses[1],
                outer_residual,
                closed_form,
                outer_gap: norm(&gap),
            })
        })
        .collect()
}
