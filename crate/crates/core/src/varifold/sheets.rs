use std::fmt;

use serde::{Serialize, Serializer};

use crate::exact::{Isometry, Side};
use crate::{Error, Result};

/// One of the six sheets `Sigma_1 .. Sigma_6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Sheet(u8);

impl Sheet {
    pub fn new(index: usize) -> Result<Self> {
        if (1..=6).contains(&index) {
            Ok(Self(index as u8))
        } else {
            Err(Error::BadIndex(format!("sheet index {index} not in 1..=6")))
        }
    }

    pub fn all() -> impl Iterator<Item = Sheet> {
        (1..=6u8).map(Sheet)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Isometry word taking `Sigma_1` to this sheet:
    /// `id, sigma, rho, rho sigma, rho^2, rho^2 sigma`.
    pub fn word(self) -> &'static [Isometry] {
        use Isometry::{Rho, Sigma};
        match self.0 {
            1 => &[],
            2 => &[Sigma],
            3 => &[Rho],
            4 => &[Rho, Sigma],
            5 => &[Rho, Rho],
            _ => &[Rho, Rho, Sigma],
        }
    }

    pub fn is_reflected(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Index `k` of the ray `T_k` along which the two halves of this sheet meet.
    pub fn ray(self) -> usize {
        self.index().div_ceil(2)
    }

    pub fn half(self, side: Side) -> HalfSheet {
        HalfSheet { sheet: self, side }
    }
}

/// `Sigma_i^+-`: the part of sheet `i` lying in `{+-x2 > 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSheet {
    pub sheet: Sheet,
    pub side: Side,
}

impl HalfSheet {
    pub fn new(index: usize, side: Side) -> Result<Self> {
        Ok(Sheet::new(index)?.half(side))
    }

    pub fn all() -> impl Iterator<Item = HalfSheet> {
        Sheet::all().flat_map(|s| Side::BOTH.into_iter().map(move |side| s.half(side)))
    }

    /// Sign of `x2` in the chart of `Sigma_1` that maps onto this half.
    pub fn chart_sign(self) -> f64 {
        if self.sheet.is_reflected() {
            -self.side.sign()
        } else {
            self.side.sign()
        }
    }

    fn bit(self) -> u16 {
        1 << (2 * (self.sheet.index() - 1) + self.side.index())
    }
}

impl fmt::Display for HalfSheet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}{}", self.sheet.index(), self.side.symbol())
    }
}

impl Serialize for HalfSheet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A union of half-sheets with multiplicity one, as a 12-bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfSheetSet(u16);

/// Selections of half-sheets used by the weak identities.
pub type Selection = HalfSheetSet;

impl HalfSheetSet {
    pub const EMPTY: Self = Self(0);
    pub const V_ALL: Self = Self(0x0fff);
    /// `W_1 + W_3 + W_5`
    pub const Z1: Self = Self(0b0011_0011_0011);
    /// `W_2 + W_4 + W_6`
    pub const Z2: Self = Self(0b1100_1100_1100);

    pub fn from_bits(bits: u16) -> Result<Self> {
        if bits <= 0x0fff {
            Ok(Self(bits))
        } else {
            Err(Error::BadIndex(format!("mask {bits:#x} has bits above 12")))
        }
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// Both halves of sheet `i`.
    pub fn w(sheet: Sheet) -> Self {
        Self::from_halves([sheet.half(Side::Plus), sheet.half(Side::Minus)])
    }

    pub fn from_halves(halves: impl IntoIterator<Item = HalfSheet>) -> Self {
        Self(halves.into_iter().fold(0, |m, h| m | h.bit()))
    }

    pub fn contains(self, h: HalfSheet) -> bool {
        self.0 & h.bit() != 0
    }

    pub fn members(self) -> impl Iterator<Item = HalfSheet> {
        HalfSheet::all().filter(move |h| self.contains(*h))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        Self(self.0 ^ other.0)
    }

    pub fn complement(self) -> Self {
        Self(!self.0 & Self::V_ALL.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Sheets whose two halves are both present.
    pub fn full_sheets(self) -> impl Iterator<Item = Sheet> {
        Sheet::all().filter(move |s| Self::w(*s).is_subset(self))
    }

    /// A half-sheet present without its partner, if any.
    pub fn unmatched(self) -> Option<HalfSheet> {
        self.members()
            .find(|h| !self.contains(h.sheet.half(h.side.flipped())))
    }

    pub fn all_subsets() -> impl Iterator<Item = Self> {
        (0..=Self::V_ALL.0).map(Self)
    }

    /// Conventional name when one exists (`V`, `Z1`, `W3`, ...).
    pub fn name(self) -> Option<String> {
        match self {
            Self::EMPTY => Some("EMPTY".into()),
            Self::V_ALL => Some("V".into()),
            Self::Z1 => Some("Z1".into()),
            Self::Z2 => Some("Z2".into()),
            _ => Sheet::all()
                .find(|s| Self::w(*s) == self)
                .map(|s| format!("W{}", s.index())),
        }
    }
}

impl fmt::Display for HalfSheetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = self.name() {
            return write!(f, "{name}");
        }
        let parts: Vec<String> = self.members().map(|h| h.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for HalfSheetSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
