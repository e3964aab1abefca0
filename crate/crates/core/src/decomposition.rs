//! Exact boundary signatures of half-sheet selections, the enumeration of
//! boundary-free selections and the decomposition of `V`.

use serde::Serialize;

use crate::exact::{ConormalTable, ExactVec3, Scale, Side};
use crate::varifold::{BoundaryCurve, HalfSheetSet, Model, Selection};
use crate::weak::{boundary_atoms, BoundaryAtom};
use crate::{Error, Result};

/// Exact conormal sums of a selection along `L^+`, `L^-` and `T_1..T_3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySignature {
    pub l_plus: ExactVec3,
    pub l_minus: ExactVec3,
    pub rays: [ExactVec3; 3],
}

impl BoundarySignature {
    pub fn zero() -> Self {
        Self {
            l_plus: ExactVec3::zero(Scale::Unit),
            l_minus: ExactVec3::zero(Scale::Unit),
            rays: std::array::from_fn(|_| ExactVec3::zero(Scale::InvSqrt7)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.l_plus.is_zero() && self.l_minus.is_zero() && self.rays.iter().all(ExactVec3::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            l_plus: self.l_plus.checked_add(&other.l_plus)?,
            l_minus: self.l_minus.checked_add(&other.l_minus)?,
            rays: [
                self.rays[0].checked_add(&other.rays[0])?,
                self.rays[1].checked_add(&other.rays[1])?,
                self.rays[2].checked_add(&other.rays[2])?,
            ],
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            l_plus: self.l_plus.neg(),
            l_minus: self.l_minus.neg(),
            rays: std::array::from_fn(|k| self.rays[k].neg()),
        }
    }

    pub fn get(&self, curve: BoundaryCurve) -> &ExactVec3 {
        match curve {
            BoundaryCurve::L(Side::Plus) => &self.l_plus,
            BoundaryCurve::L(Side::Minus) => &self.l_minus,
            BoundaryCurve::Ray(k) => &self.rays[k - 1],
        }
    }

    /// Exact strings per curve.
    pub fn entries(&self) -> Vec<(String, String)> {
        BoundaryCurve::ALL.iter().map(|c| (c.name(), self.get(*c).to_string())).collect()
    }
}

/// Signature of `sel`, exact over `Q(sqrt 3)`.
pub fn boundary_signature(table: &ConormalTable, sel: Selection) -> Result<BoundarySignature> {
    let mut sig = BoundarySignature::zero();
    for half in sel.members() {
        let i = half.sheet.index();
        let nu = table.conormal(i, half.side)?;
        match half.side {
            Side::Plus => sig.l_plus = sig.l_plus.checked_add(nu)?,
            Side::Minus => sig.l_minus = sig.l_minus.checked_add(nu)?,
        }
        let k = half.sheet.ray() - 1;
        sig.rays[k] = sig.rays[k].checked_add(table.eta(i, half.side)?)?;
    }
    Ok(sig)
}

/// All selections with zero signature, in increasing mask order.
pub fn enumerate_boundary_free(table: &ConormalTable) -> Result<Vec<Selection>> {
    let mut out = Vec::new();
    for sel in HalfSheetSet::all_subsets() {
        if boundary_signature(table, sel)?.is_zero() {
            out.push(sel);
        }
    }
    Ok(out)
}

/// Minimal non-empty boundary-free selections.
pub fn components(table: &ConormalTable) -> Result<Vec<Selection>> {
    let free = enumerate_boundary_free(table)?;
    Ok(free
        .iter()
        .copied()
        .filter(|s| !s.is_empty())
        .filter(|s| !free.iter().any(|t| !t.is_empty() && *t != *s && t.is_subset(*s)))
        .collect())
}

/// The components when they partition `V` into pairwise disjoint pieces.
pub fn unique_decomposition(table: &ConormalTable) -> Result<Vec<Selection>> {
    let comps = components(table)?;
    let mut union = HalfSheetSet::EMPTY;
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            if !a.intersection(*b).is_empty() {
                return Err(Error::CheckFailed {
                    name: "decomposition".into(),
                    detail: format!("components {a} and {b} overlap"),
                });
            }
        }
        union = union.union(*a);
    }
    if union != HalfSheetSet::V_ALL {
        return Err(Error::CheckFailed {
            name: "decomposition".into(),
            detail: format!("components cover {union}, not V"),
        });
    }
    Ok(comps)
}

/// Non-zero boundary atoms of `sel` keyed by `(curve, plane)`. Empty exactly
/// when the Grassmannian boundary measure of `sel` vanishes.
pub fn grassmann_boundary_class(model: &Model, sel: Selection) -> Result<Vec<BoundaryAtom>> {
    if !boundary_signature(&model.table, sel)?.is_zero() {
        return Err(Error::NotBoundaryFree(sel.to_string()));
    }
    Ok(boundary_atoms(model, sel)?.into_iter().filter(|a| !a.conormal.is_zero()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomRecord {
    pub curve: String,
    pub plane: Vec<Vec<String>>,
    pub conormal: String,
}

impl From<&BoundaryAtom> for AtomRecord {
    fn from(a: &BoundaryAtom) -> Self {
        Self {
            curve: a.curve.name(),
            plane: a.plane.entries.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect(),
            conormal: a.conormal.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelectionClass {
    pub selection: Selection,
    pub boundary_free: bool,
    pub curvature_varifold: bool,
    pub atoms: Vec<AtomRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub subsets_checked: usize,
    pub boundary_free: Vec<Selection>,
    pub components: Vec<Selection>,
    pub unique: bool,
    pub classes: Vec<SelectionClass>,
}

impl ClassificationReport {
    /// `components: Z1, Z2; unique decomposition`
    pub fn summary(&self) -> String {
        let names: Vec<String> = self.components.iter().map(|s| s.to_string()).collect();
        format!(
            "components: {}; {}",
            names.join(", "),
            if self.unique { "unique decomposition" } else { "decomposition not unique" }
        )
    }
}

/// Enumerate, decompose and classify `V` and each component.
pub fn classification_report(model: &Model) -> Result<ClassificationReport> {
    let table = &model.table;
    let free = enumerate_boundary_free(table)?;
    let comps = components(table)?;
    let unique = unique_decomposition(table).is_ok();
    let mut classes = Vec::new();
    for sel in std::iter::once(HalfSheetSet::V_ALL).chain(comps.iter().copied()) {
        let atoms = grassmann_boundary_class(model, sel)?;
        classes.push(SelectionClass {
            selection: sel,
            boundary_free: true,
            curvature_varifold: atoms.is_empty(),
            atoms: atoms.iter().map(AtomRecord::from).collect(),
        });
    }
    Ok(ClassificationReport {
        subsets_checked: HalfSheetSet::all_subsets().count(),
        boundary_free: free,
        components: comps,
        unique,
        classes,
    })
}
