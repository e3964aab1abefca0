//! Plain-text OBJ export of the six sheets over a square chart window.

use std::io::Write;

use super::{Model, Sheet};
use crate::linalg::{mat_vec, Vec3};
use crate::{Error, Result};

/// Indexed triangle mesh of one sheet.
#[derive(Clone, Debug)]
pub struct SheetMesh {
    pub sheet: Sheet,
    pub vertices: Vec<Vec3>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl Model {
    /// Samples sheet `i` over the chart rectangle `[0, R] x [-R, R]` with `n`
    /// cells along `x1` and `2n` along `x2`. The
    /// chart edge `x1 = 0` maps onto the x2-axis, where `g` extends by zero.
    pub fn sheet_mesh(&self, sheet: Sheet, window: f64, n: usize) -> Result<SheetMesh> {
        if !(window > 0.0 && window.is_finite()) || n == 0 {
            return Err(Error::Config(format!("empty mesh window (R = {window}, n = {n})")));
        }
        let q = self.isometry(sheet);
        let (nx, ny) = (n, 2 * n);
        let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
        for i in 0..=nx {
            let x1 = window * i as f64 / nx as f64;
            for j in 0..=ny {
                let x2 = -window + 2.0 * window * j as f64 / ny as f64;
                let x3 = if i == 0 { 0.0 } else { self.field.value_unchecked(x1, x2) };
                vertices.push(mat_vec(q, &[x1, x2, x3]));
            }
        }
        let idx = |i: usize, j: usize| i * (ny + 1) + j;
        let mut triangles = Vec::with_capacity(2 * nx * ny);
        for i in 0..nx {
            for j in 0..ny {
                triangles.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
                triangles.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
            }
        }
        Ok(SheetMesh {
            sheet,
            vertices,
            triangles,
        })
    }
}

/// Writes the meshes as one OBJ file with an object per sheet.
pub fn write_obj<W: Write>(out: &mut W, meshes: &[SheetMesh]) -> Result<()> {
    let mut offset = 1;
    for mesh in meshes {
        writeln!(out, "o sheet_{}", mesh.sheet.index())?;
        for v in &mesh.vertices {
            writeln!(out, "v {:.9} {:.9} {:.9}", v[0], v[1], v[2])?;
        }
        for t in &mesh.triangles {
            writeln!(out, "f {} {} {}", t[0] + offset, t[1] + offset, t[2] + offset)?;
        }
        offset += mesh.vertices.len();
    }
    Ok(())
}
