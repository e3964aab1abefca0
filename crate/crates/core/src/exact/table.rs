use serde::{Deserialize, Serialize};

use super::{ExactMat3, ExactVec3, QSqrt3, Scale};
use crate::{Error, Result};

/// Sign of `x2` on a half-sheet or boundary ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Plus => 0,
            Side::Minus => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Side::Plus => "+",
            Side::Minus => "-",
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// Generators of the symmetry group of the configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Isometry {
    /// Rotation by `2pi/3` about the x2-axis, taking `e1` to `(-1/2, 0, sqrt3/2)`.
    Rho,
    /// Reflection across the x1x3-plane.
    Sigma,
}

impl Isometry {
    pub fn matrix(self) -> ExactMat3 {
        let z = QSqrt3::zero;
        match self {
            Isometry::Rho => ExactMat3::from_rows([
                [QSqrt3::rational(-1, 2), z(), QSqrt3::sqrt3_times(-1, 2)],
                [z(), QSqrt3::one(), z()],
                [QSqrt3::sqrt3_times(1, 2), z(), QSqrt3::rational(-1, 2)],
            ]),
            Isometry::Sigma => ExactMat3::from_rows([
                [QSqrt3::one(), z(), z()],
                [z(), QSqrt3::rational(-1, 1), z()],
                [z(), z(), QSqrt3::one()],
            ]),
        }
    }

    /// Matrix of a word, composed in reading order (`[Rho, Sigma]` is `rho o sigma`).
    pub fn word_matrix(word: &[Isometry]) -> ExactMat3 {
        word.iter()
            .fold(ExactMat3::identity(), |acc, g| acc.mul(&g.matrix()))
    }
}

pub fn rot_apply(v: &ExactVec3) -> ExactVec3 {
    Isometry::Rho.matrix().apply(v)
}

pub fn refl_apply(v: &ExactVec3) -> ExactVec3 {
    Isometry::Sigma.matrix().apply(v)
}

/// Exact conormals `nu_i^+-` (along `L^+-`), `eta_i^+-` (along the rays),
/// ray directions `t_k` and plane projections `P_i^+-`.
#[derive(Clone, Debug)]
pub struct ConormalTable {
    nu: Vec<[ExactVec3; 2]>,
    eta: Vec<[ExactVec3; 2]>,
    rays: Vec<ExactVec3>,
    planes: Vec<[ExactMat3; 2]>,
}

fn check_sheet(i: usize) -> Result<usize> {
    if (1..=6).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::BadIndex(format!("sheet index {i} not in 1..=6")))
    }
}

impl ConormalTable {
    pub fn new() -> Self {
        let r = QSqrt3::rational;
        let s = QSqrt3::sqrt3_times;
        let z = QSqrt3::zero;
        let nu1 = [
            ExactVec3::new([s(1, 2), z(), r(1, 2)]),
            ExactVec3::new([s(1, 2), z(), r(-1, 2)]),
        ];
        let nu2 = [nu1[1].clone(), nu1[0].clone()];
        let eta1p = ExactVec3::tagged([z(), s(1, 1), r(2, 1)], Scale::InvSqrt7);
        let eta2p = ExactVec3::tagged([z(), s(1, 1), r(-2, 1)], Scale::InvSqrt7);
        let eta1 = [eta1p.clone(), eta1p.neg()];
        let eta2 = [eta2p.clone(), eta2p.neg()];

        let mut nu = vec![nu1, nu2];
        let mut eta = vec![eta1, eta2];
        for i in 2..6 {
            nu.push([rot_apply(&nu[i - 2][0]), rot_apply(&nu[i - 2][1])]);
            eta.push([rot_apply(&eta[i - 2][0]), rot_apply(&eta[i - 2][1])]);
        }
        let mut rays = vec![ExactVec3::basis(0)];
        for k in 1..3 {
            rays.push(rot_apply(&rays[k - 1]));
        }
        let e2 = ExactVec3::basis(1).outer();
        let planes = nu
            .iter()
            .map(|pair| [e2.add(&pair[0].outer()), e2.add(&pair[1].outer())])
            .collect();
        Self { nu, eta, rays, planes }
    }

    pub fn conormal(&self, i: usize, side: Side) -> Result<&ExactVec3> {
        Ok(&self.nu[check_sheet(i)?][side.index()])
    }

    pub fn eta(&self, i: usize, side: Side) -> Result<&ExactVec3> {
        Ok(&self.eta[check_sheet(i)?][side.index()])
    }

    /// Direction `t_k` of the ray `T_k`, `k` in `1..=3`.
    pub fn ray(&self, k: usize) -> Result<&ExactVec3> {
        if (1..=3).contains(&k) {
            Ok(&self.rays[k - 1])
        } else {
            Err(Error::BadIndex(format!("ray index {k} not in 1..=3")))
        }
    }

    /// Orthogonal projection onto `P_i^side = span{nu_i^side, e2}`.
    pub fn plane(&self, i: usize, side: Side) -> Result<&ExactMat3> {
        Ok(&self.planes[check_sheet(i)?][side.index()])
    }

    /// Tangent plane of sheet `i` along its ray `T_ceil(i/2)`:
    /// `span{t_k, eta_i^+}`.
    pub fn ray_tangent_plane(&self, i: usize) -> Result<ExactMat3> {
        let k = i.div_ceil(2);
        Ok(self.ray(k)?.outer().add(&self.eta(i, Side::Plus)?.outer()))
    }

    /// Asserts every exact identity of the configuration.
    pub fn verify_identities(&self) -> Result<IdentityReport> {
        let mut report = IdentityReport::default();
        let mut require = |name: String, ok: bool| -> Result<()> {
            if ok {
                report.checked.push(name);
                Ok(())
            } else {
                Err(Error::IdentityFailed(name))
            }
        };
        use Side::{Minus, Plus};
        let pairs = [
            (1, 6, Plus),
            (3, 2, Plus),
            (5, 4, Plus),
            (1, 4, Minus),
            (3, 6, Minus),
            (5, 2, Minus),
        ];
        for (i, j, side) in pairs {
            let s = side.symbol();
            let sum = self.conormal(i, side)?.checked_add(self.conormal(j, side)?)?;
            require(format!("nu_{i}^{s} + nu_{j}^{s} = 0"), sum.is_zero())?;
            require(
                format!("P_{i}^{s} = P_{j}^{s}"),
                self.plane(i, side)? == self.plane(j, side)?,
            )?;
        }
        for side in Side::BOTH {
            let s = side.symbol();
            for triple in [[1, 3, 5], [2, 4, 6]] {
                let mut sum = ExactVec3::zero(Scale::Unit);
                for i in triple {
                    sum = sum.checked_add(self.conormal(i, side)?)?;
                }
                require(
                    format!("nu_{}^{s} + nu_{}^{s} + nu_{}^{s} = 0", triple[0], triple[1], triple[2]),
                    sum.is_zero(),
                )?;
            }
        }
        for i in 1..=6 {
            let sum = self.eta(i, Plus)?.checked_add(self.eta(i, Minus)?)?;
            require(format!("eta_{i}^+ + eta_{i}^- = 0"), sum.is_zero())?;
            for side in Side::BOTH {
                let s = side.symbol();
                require(
                    format!("|nu_{i}^{s}|^2 = 1"),
                    self.conormal(i, side)?.norm_sq() == QSqrt3::one(),
                )?;
                require(
                    format!("|eta_{i}^{s}|^2 = 1"),
                    self.eta(i, side)?.norm_sq() == QSqrt3::one(),
                )?;
                let p = self.plane(i, side)?;
                require(
                    format!("P_{i}^{s} is a rank-2 orthogonal projection"),
                    &p.mul(p) == p && &p.transpose() == p && p.trace() == QSqrt3::rational(2, 1),
                )?;
            }
            if i >= 3 {
                for side in Side::BOTH {
                    let s = side.symbol();
                    require(
                        format!("nu_{i}^{s} = rho(nu_{}^{s})", i - 2),
                        self.conormal(i, side)? == &rot_apply(self.conormal(i - 2, side)?),
                    )?;
                }
            }
        }
        let rho = Isometry::Rho.matrix();
        require("rho^3 = id".into(), rho.mul(&rho).mul(&rho) == ExactMat3::identity())?;
        Ok(report)
    }
}

impl Default for ConormalTable {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub checked: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ConormalTable {
        ConormalTable::new()
    }

    #[test]
    fn rotation_examples() {
        let t = table();
        assert_eq!(&rot_apply(t.ray(1).unwrap()), t.ray(2).unwrap());
        for i in 0..3 {
            let e = ExactVec3::basis(i);
            assert_eq!(rot_apply(&rot_apply(&rot_apply(&e))), e);
        }
        assert_eq!(refl_apply(&ExactVec3::basis(1)), ExactVec3::basis(1).neg());
        let t2 = t.ray(2).unwrap().to_f64();
        assert!((t2[0] + 0.5).abs() < 1e-15 && (t2[2] - 0.75f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn conormal_examples() {
        let t = table();
        let r = QSqrt3::rational;
        let s = QSqrt3::sqrt3_times;
        let z = QSqrt3::zero;
        assert_eq!(
            t.conormal(1, Side::Plus).unwrap(),
            &ExactVec3::new([s(1, 2), z(), r(1, 2)])
        );
        assert_eq!(
            t.conormal(2, Side::Plus).unwrap(),
            &ExactVec3::new([s(1, 2), z(), r(-1, 2)])
        );
        // rho applied by hand: (-1/2 * sqrt3/2 - sqrt3/2 * 1/2, 0, sqrt3/2 * sqrt3/2 - 1/2 * 1/2)
        assert_eq!(
            t.conormal(3, Side::Plus).unwrap(),
            &ExactVec3::new([s(-1, 2), z(), r(1, 2)])
        );
        assert!(t.conormal(7, Side::Plus).is_err());
        assert!(t.conormal(0, Side::Minus).is_err());
    }

    #[test]
    fn eta_examples() {
        let t = table();
        let e = t.eta(1, Side::Plus).unwrap();
        assert_eq!(e.scale, Scale::InvSqrt7);
        assert_eq!(e.coords, [QSqrt3::zero(), QSqrt3::sqrt3_times(1, 1), QSqrt3::rational(2, 1)]);
        let f = e.to_f64();
        let c = (3.0f64 / 7.0).sqrt();
        assert!((f[1] - c).abs() < 1e-15 && (f[2] - c * 2.0 / 3f64.sqrt()).abs() < 1e-15);
        for i in 1..=6 {
            assert!(t.eta(i, Side::Plus).unwrap().checked_add(t.eta(i, Side::Minus).unwrap()).unwrap().is_zero());
        }
        assert_eq!(t.eta(3, Side::Plus).unwrap(), &rot_apply(t.eta(1, Side::Plus).unwrap()));
    }

    #[test]
    fn plane_examples() {
        let t = table();
        let p = t.plane(1, Side::Plus).unwrap();
        assert_eq!(&p.mul(p), p);
        assert_eq!(&p.transpose(), p);
        assert_eq!(p.trace(), QSqrt3::rational(2, 1));
        assert_eq!(p, t.plane(6, Side::Plus).unwrap());
        assert_ne!(p, t.plane(2, Side::Plus).unwrap());
    }

    #[test]
    fn identities_hold_exactly() {
        let report = table().verify_identities().unwrap();
        assert!(report.checked.iter().any(|n| n == "nu_1^+ + nu_6^+ = 0"));
        assert!(report.checked.iter().any(|n| n == "nu_1^- + nu_4^- = 0"));
        assert!(report.checked.iter().any(|n| n == "nu_2^+ + nu_4^+ + nu_6^+ = 0"));
    }

    #[test]
    fn non_identities_used_by_the_component_argument() {
        let t = table();
        let nu = |i| t.conormal(i, Side::Plus).unwrap();
        assert!(!nu(1).checked_add(nu(3)).unwrap().is_zero());
        assert!(!nu(1).checked_add(nu(4)).unwrap().is_zero());
        assert!(!nu(2).checked_add(nu(4)).unwrap().is_zero());
        assert!(nu(1).dot(nu(2)).signum() > 0);
        assert!(nu(1).dot(nu(4)).signum() > 0);
        let e1 = t.eta(1, Side::Plus).unwrap();
        let e2 = t.eta(2, Side::Plus).unwrap();
        assert!(!e1.checked_add(e2).unwrap().is_zero());
    }

    #[test]
    fn ray_tangent_plane_contains_ray() {
        let t = table();
        for i in 1..=6 {
            let p = t.ray_tangent_plane(i).unwrap();
            let k = i.div_ceil(2);
            assert_eq!(&p.apply(t.ray(k).unwrap()), t.ray(k).unwrap());
            assert_eq!(p.trace(), QSqrt3::rational(2, 1));
        }
    }
}
