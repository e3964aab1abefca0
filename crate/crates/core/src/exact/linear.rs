use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::QSqrt3;
use crate::linalg::{Mat3, Vec3};
use crate::{Error, Result};

/// Global scale factor carried outside the coordinates.
///
/// The `eta` conormals are `(1/sqrt 7) * (vector over Q(sqrt 3))`; keeping
/// the factor as a tag leaves every coordinate in `Q(sqrt 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Scale {
    Unit,
    InvSqrt7,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Unit => "1",
            Scale::InvSqrt7 => "1/sqrt7",
        }
    }

    fn to_f64(self) -> f64 {
        match self {
            Scale::Unit => 1.0,
            Scale::InvSqrt7 => 1.0 / 7f64.sqrt(),
        }
    }

    /// The (rational) square of the tag.
    fn squared(self) -> BigRational {
        match self {
            Scale::Unit => BigRational::from_integer(BigInt::from(1)),
            Scale::InvSqrt7 => BigRational::new(BigInt::from(1), BigInt::from(7)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactVec3 {
    pub coords: [QSqrt3; 3],
    pub scale: Scale,
}

impl ExactVec3 {
    pub fn new(coords: [QSqrt3; 3]) -> Self {
        Self { coords, scale: Scale::Unit }
    }

    pub fn tagged(coords: [QSqrt3; 3], scale: Scale) -> Self {
        Self { coords, scale }
    }

    pub fn zero(scale: Scale) -> Self {
        Self::tagged([QSqrt3::zero(), QSqrt3::zero(), QSqrt3::zero()], scale)
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [QSqrt3::zero(), QSqrt3::zero(), QSqrt3::zero()];
        c[i] = QSqrt3::one();
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QSqrt3::is_zero)
    }

    /// Sum within one scale family; mixing families is an error.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.scale != other.scale {
            return Err(Error::MixedScale {
                left: self.scale.name(),
                right: other.scale.name(),
            });
        }
        Ok(Self::tagged(
            [
                &self.coords[0] + &other.coords[0],
                &self.coords[1] + &other.coords[1],
                &self.coords[2] + &other.coords[2],
            ],
            self.scale,
        ))
    }

    pub fn neg(&self) -> Self {
        Self::tagged(
            [-&self.coords[0], -&self.coords[1], -&self.coords[2]],
            self.scale,
        )
    }

    /// Exact inner product including both scale tags.
    pub fn dot(&self, other: &Self) -> QSqrt3 {
        let raw = (0..3).fold(QSqrt3::zero(), |acc, i| &acc + &(&self.coords[i] * &other.coords[i]));
        match (self.scale, other.scale) {
            (Scale::Unit, Scale::Unit) => raw,
            (Scale::InvSqrt7, Scale::InvSqrt7) => raw.scale_rational(&Scale::InvSqrt7.squared()),
            // A mixed product leaves a 1/sqrt 7 outside the field; never needed.
            _ => panic!("inner product across scale families"),
        }
    }

    pub fn norm_sq(&self) -> QSqrt3 {
        self.dot(self)
    }

    /// `v v^T` as an untagged matrix (the tag squares to a rational).
    pub fn outer(&self) -> ExactMat3 {
        let s = self.scale.squared();
        let mut m = ExactMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.entries[i][j] = (&self.coords[i] * &self.coords[j]).scale_rational(&s);
            }
        }
        m
    }

    pub fn to_f64(&self) -> Vec3 {
        let s = self.scale.to_f64();
        [
            self.coords[0].to_f64() * s,
            self.coords[1].to_f64() * s,
            self.coords[2].to_f64() * s,
        ]
    }
}

impl fmt::Display for ExactVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale != Scale::Unit {
            write!(f, "{}*", self.scale.name())?;
        }
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMat3 {
    pub entries: [[QSqrt3; 3]; 3],
}

impl ExactMat3 {
    pub fn zero() -> Self {
        Self {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| QSqrt3::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.entries[i][i] = QSqrt3::one();
        }
        m
    }

    pub fn from_rows(entries: [[QSqrt3; 3]; 3]) -> Self {
        Self { entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.entries[i][j] = (0..3).fold(QSqrt3::zero(), |acc, k| {
                    &acc + &(&self.entries[i][k] * &other.entries[k][j])
                });
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.entries[i][j] = &self.entries[i][j] + &other.entries[i][j];
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.entries[i][j] = self.entries[j][i].clone();
            }
        }
        m
    }

    pub fn trace(&self) -> QSqrt3 {
        &(&self.entries[0][0] + &self.entries[1][1]) + &self.entries[2][2]
    }

    /// Image of a vector; the scale tag is carried through unchanged.
    pub fn apply(&self, v: &ExactVec3) -> ExactVec3 {
        let coords = std::array::from_fn(|i| {
            (0..3).fold(QSqrt3::zero(), |acc, k| &acc + &(&self.entries[i][k] * &v.coords[k]))
        });
        ExactVec3::tagged(coords, v.scale)
    }

    pub fn to_f64(&self) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].to_f64()))
    }
}
