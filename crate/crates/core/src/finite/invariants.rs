//! Invariant sets `T(K) = K` of a finite c-dual.

use serde::{Deserialize, Serialize};

use super::ground::{sort_family, submasks, SubsetMask};
use super::relation::CostRelation;
use crate::error::{Error, Result};

/// Largest diagonal for which invariant sets are enumerated.
pub const MAX_ENUMERATION: usize = 20;

/// Elements related to themselves. Every invariant set lives inside it.
pub fn x_zero(rel: &CostRelation) -> SubsetMask {
    SubsetMask::from_indices((0..rel.len()).filter(|&x| rel.related(x, x)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    /// `T(X₀) = X₀`, and `X₀` is the only invariant set.
    UniqueXZero,
    /// `T(X₀)` is not inside `X₀`, so no invariant set exists.
    NoneExists,
    /// `T(X₀)` is strictly inside `X₀`; anything can happen and the
    /// invariant sets are listed by enumeration.
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub x_zero: SubsetMask,
    pub kind: InvariantKind,
    pub invariant_sets: Vec<SubsetMask>,
}

pub fn classify(rel: &CostRelation) -> Result<Classification> {
    let x0 = x_zero(rel);
    let image = rel.c_dual(x0);
    let (kind, invariant_sets) = if image == x0 {
        (InvariantKind::UniqueXZero, vec![x0])
    } else if !image.is_subset_of(x0) {
        (InvariantKind::NoneExists, Vec::new())
    } else {
        (InvariantKind::Ambiguous, enumerate_invariant_sets(rel)?)
    };
    Ok(Classification {
        x_zero: x0,
        kind,
        invariant_sets,
    })
}

/// All `K ⊆ X₀` with `c_dual(K) = K`, sorted by (cardinality, lexicographic).
pub fn enumerate_invariant_sets(rel: &CostRelation) -> Result<Vec<SubsetMask>> {
    let x0 = x_zero(rel);
    if x0.len() > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            n: x0.len(),
            max: MAX_ENUMERATION,
        });
    }
    let mut out: Vec<SubsetMask> = submasks(x0).filter(|&k| rel.c_dual(k) == k).collect();
    sort_family(&mut out);
    Ok(out)
}

/// Grow the clique `k0` greedily to a maximal one, visiting candidates in
/// `order` (index order when `None`). The result `K` satisfies
/// `c_dual(K) ∩ X₀ = K`.
pub fn maximal_almost_invariant(
    rel: &CostRelation,
    k0: SubsetMask,
    order: Option<&[usize]>,
) -> Result<SubsetMask> {
    let g = rel.ground();
    if !k0.is_subset_of(g.full()) {
        return Err(Error::Precondition(format!(
            "{k0} is not a subset of the ground set"
        )));
    }
    for x in k0.iter() {
        for y in k0.iter() {
            if !rel.related(x, y) {
                return Err(Error::NotClique(
                    g.label(x).to_string(),
                    g.label(y).to_string(),
                ));
            }
        }
    }
    let default: Vec<usize>;
    let order = match order {
        Some(o) => {
            if let Some(&bad) = o.iter().find(|&&i| i >= g.len()) {
                return Err(Error::Precondition(format!("order mentions index {bad}")));
            }
            o
        }
        None => {
            default = (0..g.len()).collect();
            &default
        }
    };
    let x0 = x_zero(rel);
    let mut k = k0;
    let mut dual = rel.c_dual(k);
    for &z in order {
        if !k.contains(z) && x0.contains(z) && dual.contains(z) {
            k.insert(z);
            dual = dual.intersection(rel.fiber(z));
        }
    }
    // Candidates missing from `order` are tried afterwards in index order.
    for z in x0.difference(k).iter() {
        if dual.contains(z) {
            k.insert(z);
            dual = dual.intersection(rel.fiber(z));
        }
    }
    debug_assert_eq!(dual.intersection(x0), k);
    Ok(k)
}
