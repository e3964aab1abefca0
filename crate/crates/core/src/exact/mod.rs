//! Exact geometry over `Q(sqrt 3)`: scalars, tagged vectors, matrices, the
//! isometries `rho` (rotation by 2pi/3 about the x2-axis) and `sigma`
//! (reflection across the x1x3-plane), and the conormal/plane tables.

mod linear;
mod qsqrt3;
mod table;

pub use linear::{ExactMat3, ExactVec3, Scale};
pub use qsqrt3::QSqrt3;
pub use table::{refl_apply, rot_apply, ConormalTable, IdentityReport, Isometry, Side};
