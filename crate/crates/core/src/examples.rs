//! Built-in torsion/curvature data.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::structure::{CurvatureMap, TorsionTensor};

/// Torsion and curvature of a structure at a point, in an adapted frame.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureData<F> {
    pub torsion: TorsionTensor<F>,
    pub curvature: CurvatureMap<F>,
}

/// ℝ⁵ with the flat structure: T = 0, 𝒦 = 0.
pub fn flat<F: Field>() -> StructureData<F> {
    StructureData {
        torsion: TorsionTensor::zero(),
        curvature: CurvatureMap::zero(),
    }
}

/// A stand-in for the Einstein symmetric spaces: T = 0, 𝒦 = λ𝒫.
pub fn symmetric<F: Field>(lambda: &F) -> StructureData<F> {
    StructureData {
        torsion: TorsionTensor::zero(),
        curvature: CurvatureMap::projection().scale(lambda),
    }
}

/// The homogeneous space (SO(3)×SO(1,2))/SO(2):
/// T = t(θ₁∧θ₂∧θ₄ + 2θ₁∧θ₃∧θ₅), 𝒦 = 2t² κ₃ g(κ₃, ·).
pub fn so12<F: Field>(t: &F) -> Result<StructureData<F>> {
    if t.is_zero() {
        return Err(Error::Invalid("so12 needs t ≠ 0".into()));
    }
    let torsion = TorsionTensor::from_entries(&[
        ([0, 1, 3], t.clone()),
        ([0, 2, 4], t.scale_int(2)),
    ])?;
    Ok(StructureData {
        torsion,
        curvature: CurvatureMap::rank_one_kappa3(&t.square().scale_int(2)),
    })
}
