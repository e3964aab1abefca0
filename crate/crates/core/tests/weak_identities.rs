use cvf_core::decomposition::{boundary_signature, enumerate_boundary_free};
use cvf_core::exact::Side;
use cvf_core::linalg::{dot, norm};
use cvf_core::varifold::{BoundaryCurve, Execution, HalfSheet, HalfSheetSet, Model, QuadratureGrid, Region, Sheet};
use cvf_core::weak::{
    battery, boundary_closed_form, curvature_residual, cutoff_study, distributional_boundary,
    distributional_boundary_closed_form, field_battery, first_variation, Grassmann, PolyBump, SeparableTest, Spatial,
    TestFunction, VectorField,
};
use cvf_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid() -> QuadratureGrid {
    QuadratureGrid::new(3)
}

fn sheet1() -> Sheet {
    Sheet::new(1).unwrap()
}

fn half(i: usize, side: Side) -> HalfSheetSet {
    HalfSheetSet::from_halves([HalfSheet::new(i, side).unwrap()])
}

fn ball_field(center: [f64; 3], radius: f64, c: [f64; 3]) -> VectorField {
    VectorField::constant("y", Spatial::Ball { center, radius, power: 4 }, c)
}

#[test]
fn field_away_from_support_has_zero_variation() {
    let m = Model::default();
    // 60 degrees from T1 in the x1-x3 plane lies 30 degrees from every sheet.
    let y = ball_field([2.5, 0.0, 2.5 * 3f64.sqrt()], 0.5, [1.0, 2.0, 3.0]);
    assert_eq!(first_variation(&m, HalfSheetSet::V_ALL, &y, &grid()).unwrap(), 0.0);
}

#[test]
fn flat_half_sheet_obeys_divergence_theorem() {
    let m = Model::default();
    let y = ball_field([0.0, 2.0, 0.0], 0.5, [0.6, 0.3, -0.8]);
    let nu = m.nu(sheet1(), Side::Plus);
    let expected = -m.integrate_line(BoundaryCurve::L(Side::Plus), 1.5, 2.5, &grid(), |x| [dot(&y.value(x), &nu)])[0];
    let got = first_variation(&m, half(1, Side::Plus), &y, &grid()).unwrap();
    assert!(expected.abs() > 1e-2);
    assert!((got - expected).abs() <= 1e-3 * expected.abs(), "{got} vs {expected}");
}

#[test]
fn full_sheet_variation_balances_curvature_and_boundary() {
    let m = Model::default();
    let w1 = HalfSheetSet::w(sheet1());
    let region = Region::Shell { inner: 0.0, outer: 2.2 };
    for y in field_battery() {
        let delta = first_variation(&m, w1, &y, &grid()).unwrap();
        let h = m.integrate_selection(w1, &region, &grid(), |p| [dot(&p.frame.h, &y.value(&p.position))]).unwrap()[0];
        let mut line = 0.0;
        for side in Side::BOTH {
            let nu = m.nu(sheet1(), side);
            line += m.integrate_line(BoundaryCurve::L(side), 0.0, 2.2, &grid(), |x| [dot(&y.value(x), &nu)])[0];
        }
        assert!((delta + h + line).abs() < 1e-6, "{}: {delta} {h} {line}", y.id);
    }
}

#[test]
fn full_sheet_boundary_keeps_only_axis_terms() {
    let m = Model::default();
    let w1 = HalfSheetSet::w(sheet1());
    for y in field_battery() {
        let got = distributional_boundary(&m, w1, &y, &grid()).unwrap();
        let mut line = 0.0;
        for side in Side::BOTH {
            let nu = m.nu(sheet1(), side);
            line += m.integrate_line(BoundaryCurve::L(side), 0.0, 2.2, &grid(), |x| [dot(&y.value(x), &nu)])[0];
        }
        assert!((got - line).abs() <= 1e-6 * line.abs().max(1.0), "{}: {got} vs {line}", y.id);
    }
}

#[test]
fn distributional_boundary_is_additive_and_vanishes_on_v() {
    let m = Model::default();
    let scale = field_battery()
        .iter()
        .map(|y| distributional_boundary(&m, half(1, Side::Plus), y, &grid()).unwrap().abs())
        .fold(0.0, f64::max);
    for y in field_battery() {
        let a = HalfSheetSet::from_bits(0b0000_0110_1001).unwrap();
        let whole = distributional_boundary(&m, HalfSheetSet::V_ALL, &y, &grid()).unwrap();
        assert!(whole.abs() <= 1e-3 * scale, "{}: {whole}", y.id);
        let (da, dc) = (
            distributional_boundary(&m, a, &y, &grid()).unwrap(),
            distributional_boundary(&m, a.complement(), &y, &grid()).unwrap(),
        );
        assert!((da + dc - whole).abs() < 1e-10);
        assert!((da + dc).abs() <= 1e-3 * scale);
    }
}

#[test]
fn numeric_boundary_agrees_with_exact_enumeration() {
    let m = Model::default();
    let tol = 1e-6;
    for sel in enumerate_boundary_free(&m.table).unwrap() {
        for y in field_battery() {
            let v = distributional_boundary(&m, sel, &y, &grid()).unwrap();
            assert!(v.abs() <= tol, "{sel} {}: {v}", y.id);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tried = 0;
    while tried < 10 {
        let sel = HalfSheetSet::from_bits(rng.gen_range(1..0x0fff)).unwrap();
        if boundary_signature(&m.table, sel).unwrap().is_zero() {
            continue;
        }
        tried += 1;
        let biggest = field_battery()
            .iter()
            .map(|y| distributional_boundary(&m, sel, y, &grid()).unwrap().abs())
            .fold(0.0, f64::max);
        assert!(biggest > 10.0 * tol, "{sel}: {biggest}");
        for y in field_battery() {
            let a = distributional_boundary(&m, sel, &y, &grid()).unwrap();
            let b = distributional_boundary_closed_form(&m, sel, &y, &grid()).unwrap();
            assert!((a - b).abs() <= 1e-6 * b.abs().max(1.0), "{sel} {}: {a} vs {b}", y.id);
        }
    }
}

#[test]
fn test_function_away_from_axis_sees_no_boundary() {
    let m = Model::default();
    let phi = SeparableTest::new(
        "off-axis",
        Spatial::Ball { center: [1.5, 0.2, 0.3], radius: 0.5, power: 4 },
        Grassmann::Linear { c0: 1.0, c: [[0.2, 0.1, 0.0], [0.1, -0.4, 0.3], [0.0, 0.3, 0.5]] },
    );
    let w1 = HalfSheetSet::w(sheet1());
    assert_eq!(boundary_closed_form(&m, w1, &phi, &grid()).unwrap(), [0.0; 3]);
    let b = curvature_residual(&m, w1, &phi, &grid()).unwrap();
    let scale = m
        .integrate_selection(w1, &phi.region(), &grid(), |p| [phi.value(&p.position, &p.frame.t).abs()])
        .unwrap()[0];
    assert!(scale > 1e-2);
    assert!(norm(&b) <= 1e-3 * scale, "{b:?} vs scale {scale}");
}

#[test]
fn closed_form_rejects_unmatched_halves_and_cancels_on_v() {
    let m = Model::default();
    for phi in battery() {
        assert!(matches!(
            boundary_closed_form(&m, half(3, Side::Minus), &phi, &grid()),
            Err(Error::UnmatchedHalfSheet(_))
        ));
        assert_eq!(boundary_closed_form(&m, HalfSheetSet::V_ALL, &phi, &grid()).unwrap(), [0.0; 3]);
    }
}

#[test]
fn cutoff_vanishes_when_support_avoids_vertex() {
    let m = Model::default();
    let phi = SeparableTest::new("shell", Spatial::Radial(PolyBump::new(2.0, 1.0, 4)), Grassmann::One);
    let rows = cutoff_study(&m, HalfSheetSet::w(sheet1()), &phi, &[0.4, 0.2], &grid()).unwrap();
    for r in rows {
        assert_eq!(r.inner_norm, 0.0);
    }
    assert!(cutoff_study(&m, HalfSheetSet::V_ALL, &phi, &[0.0], &grid()).is_err());
}

#[test]
fn sequential_and_parallel_residuals_agree_bitwise() {
    let m = Model::default();
    let phi = &battery()[2];
    let seq = curvature_residual(&m, HalfSheetSet::Z1, phi, &grid().with_execution(Execution::Sequential)).unwrap();
    let par = curvature_residual(&m, HalfSheetSet::Z1, phi, &grid().with_execution(Execution::Parallel)).unwrap();
    assert_eq!(seq, par);
}
