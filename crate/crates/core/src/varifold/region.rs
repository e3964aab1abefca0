use serde::Serialize;

use crate::exact::{ConormalTable, ExactVec3, QSqrt3, Side};
use crate::linalg::{dot, norm, sub, Vec3};
use crate::{Error, Result};

/// `sqrt(3/7)`: cosine of the half-opening angle of the cones `C_k`.
pub fn cone_cosine() -> f64 {
    (3.0f64 / 7.0).sqrt()
}

/// Unit directions of the rays `T_1, T_2, T_3`.
pub fn ray_directions() -> [Vec3; 3] {
    let (s, c) = (2.0 * std::f64::consts::FRAC_PI_3).sin_cos();
    [[1.0, 0.0, 0.0], [c, 0.0, s], [c, 0.0, -s]]
}

/// Subsets of R^3 used to restrict surface integrals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Region {
    Everywhere,
    Ball { center: Vec3, radius: f64 },
    /// `{inner < |x| < outer}`
    Shell { inner: f64, outer: f64 },
    HalfSpace(Side),
    /// Open cone `C_k` about the ray `T_k`.
    Cone(usize),
    /// `D`, the open complement of the closed cones.
    Complement,
    Intersection(Vec<Region>),
}

impl Region {
    pub fn ball(radius: f64) -> Self {
        Region::Ball {
            center: [0.0; 3],
            radius,
        }
    }

    pub fn and(self, other: Region) -> Self {
        match self {
            Region::Intersection(mut parts) => {
                parts.push(other);
                Region::Intersection(parts)
            }
            first => Region::Intersection(vec![first, other]),
        }
    }

    pub fn contains(&self, x: &Vec3) -> Result<bool> {
        Ok(match self {
            Region::Everywhere => true,
            Region::Ball { center, radius } => norm(&sub(x, center)) < *radius,
            Region::Shell { inner, outer } => {
                let r = norm(x);
                r > *inner && r < *outer
            }
            Region::HalfSpace(side) => side.sign() * x[1] > 0.0,
            Region::Cone(k) => {
                if !(1..=3).contains(k) {
                    return Err(Error::BadIndex(format!("cone index {k} not in 1..=3")));
                }
                let r = norm(x);
                if r == 0.0 {
                    return Err(Error::OriginInCone);
                }
                dot(x, &ray_directions()[k - 1]) / r > cone_cosine()
            }
            Region::Complement => {
                let r = norm(x);
                r > 0.0 && ray_directions().iter().all(|t| dot(x, t) / r < cone_cosine())
            }
            Region::Intersection(parts) => {
                for p in parts {
                    if !p.contains(x)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// `(inner, outer)` bounds on `|x|` over the region; `outer` is `None`
    /// when the region is unbounded.
    pub fn radial_bounds(&self) -> (f64, Option<f64>) {
        match self {
            Region::Ball { center, radius } => {
                let c = norm(center);
                ((c - radius).max(0.0), Some(c + radius))
            }
            Region::Shell { inner, outer } => (*inner, Some(*outer)),
            Region::Intersection(parts) => parts.iter().fold((0.0, None), |(lo, hi), p| {
                let (plo, phi) = p.radial_bounds();
                let hi = match (hi, phi) {
                    (Some(a), Some(b)) => Some(f64::min(a, b)),
                    (a, b) => a.or(b),
                };
                (f64::max(lo, plo), hi)
            }),
            _ => (0.0, None),
        }
    }
}

/// Exact open-cone test for points with coordinates in `Q(sqrt 3)`:
/// `<x, t_k> > sqrt(3/7) |x|`, decided as `<x, t_k> > 0` and
/// `7 <x, t_k>^2 > 3 |x|^2`.
pub fn cone_contains_exact(table: &ConormalTable, k: usize, x: &ExactVec3) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::OriginInCone);
    }
    let c = x.dot(table.ray(k)?);
    if c.signum() <= 0 {
        return Ok(false);
    }
    let lhs = &QSqrt3::rational(7, 1) * &(&c * &c);
    let rhs = &QSqrt3::rational(3, 1) * &x.norm_sq();
    Ok(lhs > rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_examples() {
        let t = ray_directions();
        assert!(Region::Cone(1).contains(&t[0]).unwrap());
        let e2 = [0.0, 1.0, 0.0];
        for k in 1..=3 {
            assert!(!Region::Cone(k).contains(&e2).unwrap());
        }
        assert!(Region::Complement.contains(&e2).unwrap());
        assert!(matches!(Region::Cone(1).contains(&[0.0; 3]), Err(Error::OriginInCone)));
    }

    #[test]
    fn cone_boundary_is_the_image_of_the_diagonal() {
        // (1, 1, 1/sqrt 3) has |x|^2 = 7/3, so its cosine with t_1 is exactly sqrt(3/7).
        let x = [1.0, 1.0, 1.0 / 3f64.sqrt()];
        let cos = x[0] / norm(&x);
        assert!((cos - cone_cosine()).abs() < 1e-15);
        // Floats cannot decide the boundary; the exact test excludes it.
        let table = ConormalTable::new();
        let exact = ExactVec3::new([QSqrt3::one(), QSqrt3::one(), QSqrt3::sqrt3_times(1, 3)]);
        assert!(!cone_contains_exact(&table, 1, &exact).unwrap());
        let nearer = ExactVec3::new([QSqrt3::one(), QSqrt3::rational(99, 100), QSqrt3::sqrt3_times(1, 3)]);
        assert!(cone_contains_exact(&table, 1, &nearer).unwrap());
        assert!(cone_contains_exact(&table, 1, &ExactVec3::zero(crate::exact::Scale::Unit)).is_err());
        let inside = [1.0, 0.999, 1.0 / 3f64.sqrt()];
        let outside = [1.0, 1.001, 1.0 / 3f64.sqrt()];
        assert!(Region::Cone(1).contains(&inside).unwrap());
        assert!(!Region::Cone(1).contains(&outside).unwrap());
        assert!(Region::Complement.contains(&outside).unwrap());
    }

    #[test]
    fn bounds_of_intersections() {
        let r = Region::Shell { inner: 1.0, outer: 3.0 }.and(Region::ball(2.0)).and(Region::HalfSpace(Side::Plus));
        assert_eq!(r.radial_bounds(), (1.0, Some(2.0)));
        assert_eq!(Region::Cone(2).radial_bounds(), (0.0, None));
        let off = Region::Ball { center: [0.0, 2.0, 0.0], radius: 0.5 };
        assert_eq!(off.radial_bounds(), (1.5, Some(2.5)));
    }
}
