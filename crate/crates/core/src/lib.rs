//! Exact and numerical verification of a curvature varifold built from six
//! graph sheets that meet along a line and three rays.
//!
//! The varifold `V` is a curvature varifold without boundary, its unique
//! decomposition is `{Z1, Z2}`, and neither component is a curvature
//! varifold without boundary. Every step of that argument is exposed as an
//! executable check:
//!
//! * [`scalar`]: the bump profile and the graph function with closed-form
//!   derivatives.
//! * [`exact`]: arithmetic in `Q(sqrt 3)` and the exact conormal/plane tables.
//! * [`frame`]: tangent projection, its derivatives and the weak second
//!   fundamental form of a graph.
//! * [`varifold`]: the sheets, regions and surface/line quadrature.
//! * [`weak`]: first variation, distributional boundary and the curvature
//!   functional evaluated by quadrature against closed forms.
//! * [`decomposition`]: exhaustive enumeration of boundary-free unions of
//!   half-sheets and their classification.
//! * [`pipeline`]: the orchestrated verification suites used by the CLI.

#![allow(clippy::needless_range_loop)]

pub mod decomposition;
pub mod error;
pub mod exact;
pub mod frame;
pub mod linalg;
pub mod pipeline;
pub mod scalar;
pub mod varifold;
pub mod weak;

pub use error::{Error, Result};
