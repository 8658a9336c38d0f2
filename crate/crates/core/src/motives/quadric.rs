use serde::Serialize;

use super::MotiveError;
use crate::witt::{i_level, WittClass, WittError};

/// Projective quadric of an even-dimensional form, or just its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricDescriptor {
    pub form: Option<WittClass>,
    pub dimension: u64,
}

impl QuadricDescriptor {
    /// The quadric {q = 0} ⊂ P^{r−1} for a form of dimension r, given the
    /// anisotropic representative of q.
    pub fn of_form(q: &WittClass) -> Result<Self, MotiveError> {
        if q.dimension_parity() != 0 {
            return Err(WittError::OddDimensional.into());
        }
        let r = q.len() as u64;
        if r < 3 {
            return Err(MotiveError::DimensionOutOfRange(r.saturating_sub(2)));
        }
        Ok(QuadricDescriptor {
            form: Some(q.clone()),
            dimension: r - 2,
        })
    }

    pub fn bare(dimension: u64) -> Result<Self, MotiveError> {
        if dimension == 0 {
            return Err(MotiveError::DimensionOutOfRange(0));
        }
        Ok(QuadricDescriptor {
            form: None,
            dimension,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeightVerdict {
    pub height: u32,
    pub split: bool,
    /// I-level that decides this height; `None` for the hyperbolic class.
    pub level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricSplitLevels {
    pub i_level: Option<usize>,
    pub split_heights: Vec<u32>,
    pub heights: Vec<HeightVerdict>,
}

/// Morava heights 0..=max_height at which the K(n)-motive of the projective
/// quadric of q splits (p = 2). With m = i_level(q) the split heights are
/// exactly n < m − 1; at and beyond m − 1 the motive is reported non-split,
/// witnessed by the anisotropic m-fold Pfister form over a generic extension.
pub fn quadric_split_levels(
    q: &WittClass,
    max_height: u32,
) -> Result<QuadricSplitLevels, MotiveError> {
    if q.dimension_parity() != 0 {
        return Err(WittError::OddDimensional.into());
    }
    let level = i_level(q);
    let heights: Vec<HeightVerdict> = (0..=max_height)
        .map(|n| HeightVerdict {
            height: n,
            split: level.is_none_or(|m| (n as usize) + 1 < m),
            level,
        })
        .collect();
    Ok(QuadricSplitLevels {
        i_level: level,
        split_heights: heights.iter().filter(|h| h.split).map(|h| h.height).collect(),
        heights,
    })
}
