//! Verification suites and the command drivers behind the CLI.
//!
//! Every driver takes a [`RunConfig`], is deterministic for a fixed config
//! and embeds the config and crate version in what it writes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::{classification_report, ClassificationReport};
use crate::exact::{ConormalTable, Side};
use crate::frame::{projection_deriv, projection_from_gradient};
use crate::linalg::{norm, sub, Vec3};
use crate::scalar::{BumpSpec, ScalarField};
use crate::varifold::mesh::write_obj;
use crate::varifold::{HalfSheet, HalfSheetSet, Model, QuadratureGrid, Selection, Sheet};
use crate::weak::{
    battery, boundary_pairing, cutoff_study, distributional_boundary,
    distributional_boundary_closed_form, field_battery, make_test_function, residual_record, CutoffRow,
    ResidualRecord, SeparableTest,
};
use crate::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_LEVEL: u32 = 4;
pub const MAX_LEVEL: u32 = 8;
/// Relative tolerance of the closed-form comparisons.
pub const DEFAULT_TOL: f64 = 1e-3;
pub const DERIVATIVE_TOL: f64 = 1e-5;
pub const DERIVATIVE_POINTS: usize = 1000;
/// `|B(V, phi)| <= ratio * max_i |closed form(W_i, phi)|`
pub const CANCELLATION_RATIO: f64 = 1e-2;
pub const PLANAR_TOL: f64 = 1e-2;
/// Closed forms below this are treated as zero.
pub const ABS_FLOOR: f64 = 1e-8;
pub const CUTOFF_RADII: [f64; 4] = [0.4, 0.2, 0.1, 0.05];
/// Grassmannian radius of the planar-support test function.
pub const PLANAR_EPS: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub level: u32,
    pub tol: f64,
    pub bump: String,
    pub out: PathBuf,
    pub seed: u64,
    /// Half-width of the chart window for mesh export.
    pub window: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            level: DEFAULT_LEVEL,
            tol: DEFAULT_TOL,
            bump: BumpSpec::default().id(),
            out: PathBuf::from("cvf-out"),
            seed: 7,
            window: 2.0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<BumpSpec> {
        if !(1..=MAX_LEVEL).contains(&self.level) {
            return Err(Error::Config(format!("level {} not in 1..={MAX_LEVEL}", self.level)));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tolerance {} must be finite and non-negative", self.tol)));
        }
        if !(self.window > 0.0 && self.window.is_finite()) {
            return Err(Error::Config(format!("window {} must be positive", self.window)));
        }
        BumpSpec::from_id(&self.bump)
    }

    pub fn model(&self) -> Result<Model> {
        Ok(Model::new(self.validate()?))
    }

    pub fn grid(&self) -> QuadratureGrid {
        QuadratureGrid::new(self.level)
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub metric: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Check {
    /// Passes when `metric <= threshold`.
    pub fn at_most(name: &str, metric: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: metric <= threshold,
            metric,
            threshold,
            detail: detail.into(),
        }
    }

    pub fn flag(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            metric: if passed { 0.0 } else { 1.0 },
            threshold: 0.0,
            detail: detail.into(),
        }
    }
}

fn vdist(a: &Vec3, b: &Vec3) -> f64 {
    norm(&sub(a, b))
}

pub fn bump_suite(bump: &BumpSpec) -> Vec<Check> {
    match bump.check_properties(400) {
        Ok(c) => vec![Check::at_most(
            "bump",
            c.sampled_max_slope,
            4.0,
            format!("{}: integral {:.15}", bump.id(), c.integral),
        )],
        Err(e) => vec![Check::flag("bump", false, format!("{}: {e}", bump.id()))],
    }
}

pub fn identity_suite(table: &ConormalTable) -> Vec<Check> {
    match table.verify_identities() {
        Ok(report) => vec![Check::flag(
            "exact_identities",
            true,
            format!("{} identities exact", report.checked.len()),
        )],
        Err(e) => vec![Check::flag("exact_identities", false, e.to_string())],
    }
}

/// Largest relative error of the closed-form derivatives against central
/// differences, and the number of planar-sector points with a nonzero Hessian.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivativeStats {
    pub points: usize,
    pub grad: f64,
    pub hess: f64,
    pub dt: f64,
    pub planar_points: usize,
    pub planar_nonzero: usize,
}

/// `|a - b|_inf / max(|b|_inf, natural)`
fn rel(a: &[f64], b: &[f64], natural: f64) -> f64 {
    let diff = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let size = b.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    diff / size.max(natural)
}

pub fn derivative_stats(field: &ScalarField, points: usize, seed: u64) -> Result<DerivativeStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = DerivativeStats {
        points,
        grad: 0.0,
        hess: 0.0,
        dt: 0.0,
        planar_points: 0,
        planar_nonzero: 0,
    };
    for k in 0..points {
        let x1: f64 = rng.gen_range(1e-2..3.0);
        // Half the points concentrate on the curved sector |x2| < 1.2 x1.
        let x2 = if k % 2 == 0 {
            x1 * rng.gen_range(-1.2..1.2)
        } else {
            rng.gen_range(-3.0..3.0)
        };
        let h = 1e-4 * x1;
        let grad = field.grad(x1, x2)?;
        let hess = field.hess(x1, x2)?;
        let fd_grad = [
            (field.value(x1 + h, x2)? - field.value(x1 - h, x2)?) / (2.0 * h),
            (field.value(x1, x2 + h)? - field.value(x1, x2 - h)?) / (2.0 * h),
        ];
        stats.grad = stats.grad.max(rel(&grad, &fd_grad, 1.0));
        let (gp1, gm1) = (field.grad(x1 + h, x2)?, field.grad(x1 - h, x2)?);
        let (gp2, gm2) = (field.grad(x1, x2 + h)?, field.grad(x1, x2 - h)?);
        let fd_hess = [
            (gp1[0] - gm1[0]) / (2.0 * h),
            (gp2[0] - gm2[0]) / (2.0 * h),
            (gp1[1] - gm1[1]) / (2.0 * h),
            (gp2[1] - gm2[1]) / (2.0 * h),
        ];
        let flat = [hess[0][0], hess[0][1], hess[1][0], hess[1][1]];
        stats.hess = stats.hess.max(rel(&flat, &fd_hess, 1.0 / x1));
        let dt = projection_deriv(grad, hess);
        for (l, (gp, gm)) in [(gp1, gm1), (gp2, gm2)].into_iter().enumerate() {
            let (tp, tm) = (projection_from_gradient(gp), projection_from_gradient(gm));
            let fd: Vec<f64> = (0..9).map(|e| (tp[e / 3][e % 3] - tm[e / 3][e % 3]) / (2.0 * h)).collect();
            let exact: Vec<f64> = (0..9).map(|e| dt[l][e / 3][e % 3]).collect();
            stats.dt = stats.dt.max(rel(&exact, &fd, 1.0 / x1));
        }
        if x1 < x2.abs() {
            stats.planar_points += 1;
            if flat.iter().any(|v| *v != 0.0) {
                stats.planar_nonzero += 1;
            }
        }
    }
    Ok(stats)
}

pub fn derivative_suite(field: &ScalarField, seed: u64) -> Result<Vec<Check>> {
    let s = derivative_stats(field, DERIVATIVE_POINTS, seed)?;
    let worst = s.grad.max(s.hess).max(s.dt);
    Ok(vec![
        Check::at_most(
            "derivatives",
            worst,
            DERIVATIVE_TOL,
            format!("{} points: grad {:.2e}, hess {:.2e}, dT {:.2e}", s.points, s.grad, s.hess, s.dt),
        ),
        Check::flag(
            "planar_hessian",
            s.planar_nonzero == 0 && s.planar_points > 0,
            format!("{} of {} planar points with nonzero Hessian", s.planar_nonzero, s.planar_points),
        ),
    ])
}

/// Residual records of every sheet against every battery function.
pub fn sheet_residuals(model: &Model, tests: &[SeparableTest], grid: &QuadratureGrid) -> Result<Vec<ResidualRecord>> {
    let mut out = Vec::new();
    for phi in tests {
        for sheet in Sheet::all() {
            out.push(residual_record(model, HalfSheetSet::w(sheet), phi, grid)?);
        }
    }
    Ok(out)
}

fn max_relative_error(records: &[ResidualRecord]) -> f64 {
    records.iter().map(ResidualRecord::relative_error).fold(0.0, f64::max)
}

/// `|B(V, phi)| / max_i |closed form(W_i, phi)|`, maximised over the battery
/// functions with a nonzero single-sheet closed form. `records` holds the
/// six sheets for each function in order.
pub fn cancellation_ratio(records: &[ResidualRecord]) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut used = 0;
    for chunk in records.chunks(6) {
        let scale = chunk.iter().map(|r| norm(&r.closed_form)).fold(0.0, f64::max);
        if scale <= ABS_FLOOR {
            continue;
        }
        let mut v = [0.0; 3];
        for r in chunk {
            for l in 0..3 {
                v[l] += r.residual[l];
            }
        }
        worst = worst.max(norm(&v) / scale);
        used += 1;
    }
    (worst, used)
}

pub struct BoundarySuite {
    pub checks: Vec<Check>,
    pub records: Vec<ResidualRecord>,
}

/// Closed-form boundary of each `W_i` at the configured level, its
/// improvement over the next coarser level, and the cancellation in `V`.
pub fn boundary_suite(model: &Model, config: &RunConfig) -> Result<BoundarySuite> {
    let tests = battery();
    let grid = config.grid();
    let records = sheet_residuals(model, &tests, &grid)?;
    let err = max_relative_error(&records);
    let mut checks = vec![Check::at_most(
        "boundary_w",
        err,
        config.tol,
        format!("{} functions x 6 sheets at level {}", tests.len(), config.level),
    )];
    if config.level >= 2 {
        let coarse = sheet_residuals(model, &tests, &QuadratureGrid::new(config.level - 1))?;
        let coarse_err = max_relative_error(&coarse);
        checks.push(Check {
            name: "boundary_w_refinement".into(),
            passed: err < coarse_err,
            metric: err,
            threshold: coarse_err,
            detail: format!("level {} error {coarse_err:.3e} -> level {} error {err:.3e}", config.level - 1, config.level),
        });
    }
    let (ratio, used) = cancellation_ratio(&records);
    checks.push(Check::at_most(
        "v_cancellation",
        ratio,
        CANCELLATION_RATIO,
        format!("{used} functions with nonzero single-sheet boundary"),
    ));
    Ok(BoundarySuite { checks, records })
}

/// `V∂Σ_1^+` against its line integrals for the vector-field battery.
pub fn distributional_suite(model: &Model, config: &RunConfig) -> Result<Vec<Check>> {
    let grid = config.grid();
    let sel = HalfSheetSet::from_halves([HalfSheet::new(1, Side::Plus)?]);
    let mut worst = 0.0f64;
    for y in field_battery() {
        let numeric = distributional_boundary(model, sel, &y, &grid)?;
        let closed = distributional_boundary_closed_form(model, sel, &y, &grid)?;
        worst = worst.max((numeric - closed).abs() / closed.abs().max(ABS_FLOOR));
    }
    Ok(vec![Check::at_most(
        "distributional_boundary",
        worst,
        config.tol,
        "S1+ against L+ and T1 line integrals, 3 fields",
    )])
}

/// Boundary pairing of a component with the planar-support function at
/// `P_i^+` and the expected value `nu_i^+`.
pub fn planar_pairing(model: &Model, sel: Selection, sheet: usize, grid: &QuadratureGrid) -> Result<(Vec3, Vec3)> {
    let plane = model.table.plane(sheet, Side::Plus)?;
    let phi = make_test_function(Side::Plus, plane, PLANAR_EPS)?;
    let value = boundary_pairing(model, sel, &phi, grid)?;
    Ok((value, model.nu(Sheet::new(sheet)?, Side::Plus)))
}

pub fn component_suite(model: &Model, config: &RunConfig) -> Result<Vec<Check>> {
    let grid = config.grid();
    let mut checks = Vec::new();
    for (name, sel, sheet) in [("z1_boundary", HalfSheetSet::Z1, 1), ("z2_boundary", HalfSheetSet::Z2, 2)] {
        let (value, expected) = planar_pairing(model, sel, sheet, &grid)?;
        checks.push(Check::at_most(
            name,
            vdist(&value, &expected) / norm(&expected),
            PLANAR_TOL,
            format!("{sel}: boundary pairing {value:?}, nu_{sheet}^+ = {expected:?}"),
        ));
    }
    Ok(checks)
}

pub fn enumeration_suite(model: &Model) -> Result<(Vec<Check>, ClassificationReport)> {
    let report = classification_report(model)?;
    let expected = vec![HalfSheetSet::EMPTY, HalfSheetSet::Z1, HalfSheetSet::Z2, HalfSheetSet::V_ALL];
    let comps_ok = report.components == vec![HalfSheetSet::Z1, HalfSheetSet::Z2] && report.unique;
    let classes_ok = report
        .classes
        .iter()
        .all(|c| c.curvature_varifold == (c.selection == HalfSheetSet::V_ALL));
    let checks = vec![
        Check::flag(
            "enumeration",
            report.boundary_free == expected,
            format!("{} subsets, boundary-free: {:?}", report.subsets_checked, names(&report.boundary_free)),
        ),
        Check::flag("components", comps_ok, report.summary()),
        Check::flag(
            "classification",
            classes_ok,
            "V curvature without boundary; Z1, Z2 carry nonzero Grassmannian boundary",
        ),
    ];
    Ok((checks, report))
}

fn names(sets: &[Selection]) -> Vec<String> {
    sets.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub residuals: Vec<ResidualRecord>,
    pub classification: Option<ClassificationReport>,
    pub passed: bool,
    pub first_failure: Option<String>,
}

impl VerifyReport {
    fn record(&mut self, checks: Vec<Check>) -> bool {
        for c in checks {
            if !c.passed && self.first_failure.is_none() {
                self.first_failure = Some(c.name.clone());
            }
            self.checks.push(c);
        }
        self.first_failure.is_none()
    }
}

/// Runs the suites in order, stopping after the first one with a failing
/// check. Nothing is written.
pub fn run_verify(config: &RunConfig) -> Result<VerifyReport> {
    let bump = config.validate()?;
    let model = Model::new(bump);
    let mut report = VerifyReport {
        version: VERSION,
        config: config.clone(),
        checks: Vec::new(),
        residuals: Vec::new(),
        classification: None,
        passed: false,
        first_failure: None,
    };
    let ok = report.record(bump_suite(&bump))
        && report.record(identity_suite(&model.table))
        && report.record(derivative_suite(&model.field, config.seed)?)
        && {
            let b = boundary_suite(&model, config)?;
            report.residuals = b.records;
            report.record(b.checks)
        }
        && report.record(distributional_suite(&model, config)?)
        && report.record(component_suite(&model, config)?)
        && {
            let (checks, classification) = enumeration_suite(&model)?;
            report.classification = Some(classification);
            report.record(checks)
        };
    report.passed = ok;
    Ok(report)
}

fn create_out(out: &Path) -> Result<()> {
    fs::create_dir_all(out)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// `run_verify`, writing `verify.json` into the output directory. Check
/// failures are reported through [`VerifyReport::outcome`].
pub fn cmd_verify(config: &RunConfig) -> Result<VerifyReport> {
    let report = run_verify(config)?;
    create_out(&config.out)?;
    write_json(&config.out.join("verify.json"), &report)?;
    Ok(report)
}

impl VerifyReport {
    /// [`Error::CheckFailed`] naming the first failing check, if any.
    pub fn outcome(&self) -> Result<()> {
        match &self.first_failure {
            None => Ok(()),
            Some(name) => {
                let detail = self.checks.iter().find(|c| &c.name == name).map(|c| c.detail.clone()).unwrap_or_default();
                Err(Error::CheckFailed { name: name.clone(), detail })
            }
        }
    }
}

/// One row of the refinement table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub level: u32,
    pub boundary_w_error: f64,
    pub v_ratio: f64,
    pub planar_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub version: &'static str,
    pub config: RunConfig,
    pub rows: Vec<ConvergenceRow>,
    pub cutoff: Vec<CutoffRow>,
}

impl ConvergenceReport {
    pub fn table_csv(&self) -> String {
        let mut s = String::from("level,boundary_w_error,v_ratio,planar_error\n");
        for r in &self.rows {
            s.push_str(&format!("{},{:e},{:e},{:e}\n", r.level, r.boundary_w_error, r.v_ratio, r.planar_error));
        }
        s
    }

    pub fn cutoff_csv(&self) -> String {
        let mut s = String::from("eps,inner_norm,bound,mass,curvature_mass,outer_gap\n");
        for r in &self.cutoff {
            s.push_str(&format!(
                "{},{:e},{:e},{:e},{:e},{:e}\n",
                r.eps, r.inner_norm, r.bound, r.mass, r.curvature_mass, r.outer_gap
            ));
        }
        s
    }

    /// The error column improves on the last refinement.
    pub fn improves(&self) -> bool {
        match self.rows.as_slice() {
            [.., a, b] => b.boundary_w_error < a.boundary_w_error,
            _ => false,
        }
    }
}

/// The function localised at the vertex by the cutoff study: a ball bump
/// containing the origin with a plane-dependent factor.
pub fn cutoff_function() -> SeparableTest {
    battery().into_iter().find(|t| t.id.starts_with("ball(0.2,0.3,-0.1")).expect("battery member")
}

pub fn run_converge(config: &RunConfig, levels: &[u32]) -> Result<ConvergenceReport> {
    let model = config.model()?;
    if levels.len() < 2 {
        return Err(Error::Config("convergence needs at least two levels".into()));
    }
    if let Some(l) = levels.iter().find(|l| !(1..=MAX_LEVEL).contains(*l)) {
        return Err(Error::Config(format!("level {l} not in 1..={MAX_LEVEL}")));
    }
    let tests = battery();
    let mut rows = Vec::new();
    for &level in levels {
        let grid = QuadratureGrid::new(level);
        let records = sheet_residuals(&model, &tests, &grid)?;
        let (value, expected) = planar_pairing(&model, HalfSheetSet::Z1, 1, &grid)?;
        rows.push(ConvergenceRow {
            level,
            boundary_w_error: records.iter().map(ResidualRecord::error).fold(0.0, f64::max),
            v_ratio: cancellation_ratio(&records).0,
            planar_error: vdist(&value, &expected),
        });
    }
    let cutoff = cutoff_study(
        &model,
        HalfSheetSet::w(Sheet::new(1)?),
        &cutoff_function(),
        &CUTOFF_RADII,
        &config.grid(),
    )?;
    Ok(ConvergenceReport {
        version: VERSION,
        config: config.clone(),
        rows,
        cutoff,
    })
}

/// Writes `converge.csv`, `cutoff.csv` and `converge.json`; a table that
/// does not improve on the last refinement is [`Error::NotConverged`].
pub fn cmd_converge(config: &RunConfig, levels: &[u32]) -> Result<ConvergenceReport> {
    let report = run_converge(config, levels)?;
    create_out(&config.out)?;
    fs::write(config.out.join("converge.csv"), report.table_csv())?;
    fs::write(config.out.join("cutoff.csv"), report.cutoff_csv())?;
    write_json(&config.out.join("converge.json"), &report)?;
    if !report.improves() {
        let n = report.rows.len();
        return Err(Error::NotConverged {
            level: report.rows[n - 1].level,
            coarse: report.rows[n - 2].boundary_w_error,
            refined: report.rows[n - 1].boundary_w_error,
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub version: &'static str,
    pub config: RunConfig,
    pub classification: ClassificationReport,
}

impl EnumerationReport {
    pub fn lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .classification
            .boundary_free
            .iter()
            .map(|s| format!("boundary-free: {s} ({:#05x})", s.bits()))
            .collect();
        lines.push(self.classification.summary());
        lines
    }
}

/// Enumerates, writes `classification.json` and returns the report.
pub fn cmd_enumerate(config: &RunConfig) -> Result<EnumerationReport> {
    let model = config.model()?;
    let report = EnumerationReport {
        version: VERSION,
        config: config.clone(),
        classification: classification_report(&model)?,
    };
    create_out(&config.out)?;
    write_json(&config.out.join("classification.json"), &report)?;
    Ok(report)
}

/// Writes `sheets.obj` with one object per sheet over the chart window
/// `[0, R] x [-R, R]`, `8 * 2^(level-1)` cells per side.
pub fn cmd_export_mesh(config: &RunConfig) -> Result<PathBuf> {
    let model = config.model()?;
    let n = 8usize << (config.level - 1);
    let meshes = Sheet::all()
        .map(|s| model.sheet_mesh(s, config.window, n))
        .collect::<Result<Vec<_>>>()?;
    create_out(&config.out)?;
    let path = config.out.join("sheets.obj");
    let mut file = std::io::BufWriter::new(fs::File::create(&path)?);
    write_obj(&mut file, &meshes)?;
    file.flush()?;
    Ok(path)
}

/// Process exit code for an error: 1 check failure, 2 usage/config, 3 I/O.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => 3,
        Error::CheckFailed { .. } | Error::NotConverged { .. } => 1,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig { level: 0, ..RunConfig::default() };
        assert!(matches!(bad.validate(), Err(Error::Config(_))));
        let bad = RunConfig { tol: f64::NAN, ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let bad = RunConfig { bump: "gaussian".into(), ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let bad = RunConfig { window: 0.0, ..RunConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn derivative_suite_passes_for_compliant_bumps() {
        for bump in [BumpSpec::quintic_plateau(), BumpSpec::alt()] {
            let s = derivative_stats(&ScalarField::new(bump), 200, 3).unwrap();
            assert!(s.grad.max(s.hess).max(s.dt) <= DERIVATIVE_TOL, "{s:?}");
            assert_eq!(s.planar_nonzero, 0);
            assert!(s.planar_points > 20);
        }
    }

    #[test]
    fn steep_bump_stops_at_the_bump_suite() {
        let config = RunConfig { bump: "steep".into(), level: 1, ..RunConfig::default() };
        let report = run_verify(&config).unwrap();
        assert!(!report.passed);
        assert_eq!(report.first_failure.as_deref(), Some("bump"));
        assert_eq!(report.checks.len(), 1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::Io(std::io::Error::other("x"))), 3);
        assert_eq!(exit_code(&Error::CheckFailed { name: "a".into(), detail: String::new() }), 1);
    }

    #[test]
    fn single_level_is_a_usage_error() {
        let config = RunConfig::default();
        assert!(matches!(run_converge(&config, &[3]), Err(Error::Config(_))));
    }
}
