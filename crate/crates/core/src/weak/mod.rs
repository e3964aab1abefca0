//! Weak identities: test functions, vector fields, the curvature
//! functional `B` and the distributional boundary.

pub mod residual;
pub mod test_function;

pub use residual::{
    boundary_atoms, boundary_closed_form, boundary_pairing, boundary_closed_form_halves, curvature_residual, cutoff_study,
    distributional_boundary, distributional_boundary_closed_form, first_variation, residual_record, BoundaryAtom,
    CutoffRow, ResidualRecord,
};
pub use test_function::{
    make_test_function, Cutoff, Grassmann, Jet, PolyBump, SeparableTest, Spatial, TestFunction, VectorField,
};

use crate::exact::{ConormalTable, Side};

/// Fixed battery of test functions: radial shells, off-centre balls whose
/// support crosses the axis at non-aligned radii, a ball containing the
/// vertex, and the planar-support functions on `L^+` and `L^-`.
pub fn battery() -> Vec<SeparableTest> {
    let table = ConormalTable::new();
    let linear = [[0.3, -0.2, 0.5], [-0.2, 1.0, 0.1], [0.5, 0.1, -0.7]];
    let quadratic = [[0.4, 0.9, -0.3], [0.2, -0.6, 0.8], [-0.3, 0.5, 1.1]];
    vec![
        SeparableTest::new("shell(0.5,2.5)", Spatial::Radial(PolyBump::new(1.5, 1.0, 4)), Grassmann::One),
        SeparableTest::new(
            "shell(1,3)*linear",
            Spatial::Radial(PolyBump::new(2.0, 1.0, 4)),
            Grassmann::Linear { c0: 0.5, c: linear },
        ),
        SeparableTest::new(
            "ball(0.3,1.2,0.2;1.1)*quadratic",
            Spatial::Ball { center: [0.3, 1.2, 0.2], radius: 1.1, power: 4 },
            Grassmann::Quadratic { c0: -0.2, c: quadratic },
        ),
        SeparableTest::new(
            "ball(-0.4,-1.5,0.3;1.3)*linear",
            Spatial::Ball { center: [-0.4, -1.5, 0.3], radius: 1.3, power: 4 },
            Grassmann::Linear { c0: 1.0, c: linear },
        ),
        SeparableTest::new(
            "ball(0.2,0.3,-0.1;1.5)",
            Spatial::Ball { center: [0.2, 0.3, -0.1], radius: 1.5, power: 4 },
            Grassmann::Linear { c0: 1.0, c: quadratic },
        ),
        make_test_function(Side::Plus, table.plane(1, Side::Plus).expect("plane"), 0.5).expect("radius"),
        make_test_function(Side::Minus, table.plane(2, Side::Minus).expect("plane"), 0.5).expect("radius"),
    ]
}

/// Vector fields for the distributional-boundary identities.
pub fn field_battery() -> Vec<VectorField> {
    vec![
        VectorField::constant("e2*shell(0.5,2.5)", Spatial::Radial(PolyBump::new(1.5, 1.0, 4)), [0.0, 1.0, 0.0]),
        VectorField::constant(
            "ball(0.4,1.0,0.3;1.2)",
            Spatial::Ball { center: [0.4, 1.0, 0.3], radius: 1.2, power: 4 },
            [0.7, -0.2, 0.4],
        ),
        VectorField {
            id: "ball(0.1,-0.2,0.1;2)*affine".into(),
            spatial: Spatial::Ball { center: [0.1, -0.2, 0.1], radius: 2.0, power: 4 },
            constant: [0.2, 0.5, -0.3],
            linear: [[0.3, 0.0, -0.2], [0.1, 0.4, 0.0], [0.0, -0.5, 0.2]],
        },
    ]
}
