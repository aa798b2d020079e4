//! ORQIs on `P(X)` with one, two, three or four image sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{GroundSet, SubsetMask, TransformTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SimpleOrqi {
    /// Everything goes to `X`.
    Constant,
    /// Subsets of `k` go to `X`, the rest to `k`.
    Below { k: SubsetMask },
    /// `k1 ⊊ k2 ⊊ X`: `X` and `k1` are swapped, `k2` is fixed.
    Pair { k1: SubsetMask, k2: SubsetMask },
    /// `k0 ⊊ k1 ⊊ k2 ⊊ X`: `X ↔ k0` and `k1 ↔ k2`.
    Chain {
        k0: SubsetMask,
        k1: SubsetMask,
        k2: SubsetMask,
    },
}

fn strict_chain(g: &GroundSet, sets: &[SubsetMask]) -> Result<()> {
    let mut prev: Option<SubsetMask> = None;
    for &s in sets.iter().chain(std::iter::once(&g.full())) {
        if !s.is_subset_of(g.full()) {
            return Err(Error::Precondition(format!(
                "{s} is not a subset of the ground set"
            )));
        }
        if let Some(p) = prev {
            if !p.is_subset_of(s) || p == s {
                return Err(Error::Precondition(format!(
                    "{p} must be a proper subset of {s}"
                )));
            }
        }
        prev = Some(s);
    }
    Ok(())
}

pub fn simple_orqi_catalog(ground: &GroundSet, kind: SimpleOrqi) -> Result<TransformTable> {
    let x = ground.full();
    match kind {
        SimpleOrqi::Constant => TransformTable::from_fn(ground.clone(), |_| x),
        SimpleOrqi::Below { k } => {
            strict_chain(ground, &[k])?;
            TransformTable::from_fn(ground.clone(), |l| if l.is_subset_of(k) { x } else { k })
        }
        SimpleOrqi::Pair { k1, k2 } => {
            strict_chain(ground, &[k1, k2])?;
            TransformTable::from_fn(ground.clone(), |l| {
                if l.is_subset_of(k1) {
                    x
                } else if l.is_subset_of(k2) {
                    k2
                } else {
                    k1
                }
            })
        }
        SimpleOrqi::Chain { k0, k1, k2 } => {
            strict_chain(ground, &[k0, k1, k2])?;
            TransformTable::from_fn(ground.clone(), |l| {
                if l.is_subset_of(k0) {
                    x
                } else if l.is_subset_of(k1) {
                    k2
                } else if l.is_subset_of(k2) {
                    k1
                } else {
                    k0
                }
            })
        }
    }
}
