//! Operations that build new ORQIs from old ones on finite ground sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ground::{sort_family, submasks, SubsetMask};
use super::relation::CostRelation;
use super::table::{is_orqi, OrqiVerdict, SubFamilyTransform, TransformTable, MAX_TABLE};
use crate::error::{Error, Result};

/// Relation with every entry negated. Its c-dual is the dual ORQI.
pub fn dual_orqi(rel: &CostRelation) -> CostRelation {
    let full = rel.ground().full().bits();
    let rows = rel.rows().iter().map(|r| !r & full).collect();
    CostRelation::from_rows(rel.ground().clone(), rows).expect("negation keeps symmetry")
}

/// Entrywise AND of relations on a common ground set.
pub fn intersect_orqis(rels: &[CostRelation]) -> Result<CostRelation> {
    let first = rels
        .first()
        .ok_or(Error::Empty("no relations to intersect"))?;
    let mut rows = first.rows().to_vec();
    for r in &rels[1..] {
        if r.ground() != first.ground() {
            return Err(Error::GroundMismatch);
        }
        for (a, b) in rows.iter_mut().zip(r.rows()) {
            *a &= b;
        }
    }
    CostRelation::from_rows(first.ground().clone(), rows)
}

/// `K -> X \ T(X \ K)`.
pub fn complement_conjugate(t: &TransformTable) -> TransformTable {
    let g = t.ground();
    TransformTable::from_fn(g.clone(), |k| g.complement(t.apply(g.complement(k))))
        .expect("same ground set")
}

/// Why a table fails to be a complemented ORQI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementViolation {
    /// `R(R(set))` is not inside `set`.
    NotContracting {
        set: SubsetMask,
        double_image: SubsetMask,
    },
    NotOrderReversing {
        smaller: SubsetMask,
        larger: SubsetMask,
    },
}

impl fmt::Display for ComplementViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplementViolation::NotContracting { set, double_image } => {
                write!(f, "R(R({set})) = {double_image} is not inside {set}")
            }
            ComplementViolation::NotOrderReversing { smaller, larger } => {
                write!(
                    f,
                    "{smaller} is inside {larger} but R({larger}) is not inside R({smaller})"
                )
            }
        }
    }
}

/// Check order reversal and `R(R(K)) ⊆ K` for every `K`.
pub fn check_complemented(r: &TransformTable) -> Option<ComplementViolation> {
    let n = r.ground().len();
    for k in 0..1u64 << n {
        let k = SubsetMask(k);
        let rr = r.apply(r.apply(k));
        if !rr.is_subset_of(k) {
            return Some(ComplementViolation::NotContracting {
                set: k,
                double_image: rr,
            });
        }
        for x in k.iter() {
            let mut l = k;
            l.remove(x);
            if !r.apply(k).is_subset_of(r.apply(l)) {
                return Some(ComplementViolation::NotOrderReversing {
                    smaller: l,
                    larger: k,
                });
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SandwichPattern {
    /// `T ∘ R ∘ T`, again an ORQI.
    Trt,
    /// `R ∘ T ∘ R`, a complemented ORQI.
    Rtr,
}

/// Sandwich an ORQI `t` with a complemented ORQI `r`.
pub fn sandwich(
    t: &TransformTable,
    r: &TransformTable,
    pattern: SandwichPattern,
) -> Result<TransformTable> {
    if t.ground() != r.ground() {
        return Err(Error::GroundMismatch);
    }
    if let OrqiVerdict::Violated(v) = is_orqi(t) {
        return Err(Error::NotOrqi(v));
    }
    if let Some(v) = check_complemented(r) {
        return Err(Error::NotComplemented(v));
    }
    match pattern {
        SandwichPattern::Trt => t.compose(&r.compose(t)?),
        SandwichPattern::Rtr => r.compose(&t.compose(r)?),
    }
}

/// `R⁻¹ ∘ T ∘ R` on the image of `t`, for an order-isomorphism `r` of that image.
pub fn conjugate_on_image(
    t: &TransformTable,
    r: &SubFamilyTransform,
) -> Result<SubFamilyTransform> {
    if t.ground() != r.ground() {
        return Err(Error::GroundMismatch);
    }
    let image = t.image();
    let domain: Vec<SubsetMask> = r.domain().collect();
    let mut sorted = domain.clone();
    sort_family(&mut sorted);
    if sorted != image {
        return Err(Error::BadSubFamily(
            "R must be defined exactly on the image of T".into(),
        ));
    }
    let mut inverse = Vec::with_capacity(domain.len());
    for &(k, rk) in r.entries() {
        inverse.push((rk, k));
    }
    inverse.sort_by(|a, b| a.0.family_cmp(b.0));
    if inverse.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::BadSubFamily(
            "R is not injective on the image".into(),
        ));
    }
    for &(a, ra) in r.entries() {
        for &(b, rb) in r.entries() {
            if a.is_subset_of(b) != ra.is_subset_of(rb) {
                return Err(Error::BadSubFamily(format!(
                    "R does not preserve and reflect inclusion between {a} and {b}"
                )));
            }
        }
    }
    let r_inv = |k: SubsetMask| {
        let i = inverse
            .binary_search_by(|e| e.0.family_cmp(k))
            .expect("bijection");
        inverse[i].1
    };
    let entries = image
        .iter()
        .map(|&k| (k, r_inv(t.apply(r.get(k).expect("domain is the image")))))
        .collect();
    SubFamilyTransform::new(t.ground().clone(), entries)
}

/// Restrict the relation to the elements of `m0`. The c-dual on the
/// restriction is `K -> c_dual(K) ∩ m0`.
pub fn restrict(rel: &CostRelation, m0: SubsetMask) -> Result<CostRelation> {
    if !m0.is_subset_of(rel.ground().full()) {
        return Err(Error::Precondition(format!(
            "{m0} is not a subset of the ground set"
        )));
    }
    if m0.is_empty() {
        return Ok(CostRelation::empty());
    }
    let rows = m0
        .iter()
        .map(|x| rel.fiber(x).intersection(m0).compress(m0).bits())
        .collect();
    CostRelation::from_rows(rel.ground().restrict(m0), rows)
}

/// Result of comparing the closed sets of a restriction with those cut out
/// of the whole ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubclassReport {
    /// Whether `y` is itself c-closed, the hypothesis of the comparison.
    pub hypothesis_met: bool,
    /// Closed sets of the restriction to `y`, as subsets of the whole ground set.
    pub restricted_class: Vec<SubsetMask>,
    /// `{B ∩ y : c_dual(y) ⊆ B, B closed}`.
    pub cut_class: Vec<SubsetMask>,
    /// `None` when the hypothesis fails, since then the comparison says nothing.
    pub classes_agree: Option<bool>,
    /// Every restricted closed set `A` satisfies `A = envelope(A) ∩ y`.
    /// This one holds for any `y`.
    pub trace_holds: bool,
}

pub fn subclass_structure(rel: &CostRelation, y: SubsetMask) -> Result<SubclassReport> {
    let n = rel.len();
    if n > MAX_TABLE {
        return Err(Error::TooLarge { n, max: MAX_TABLE });
    }
    if !y.is_subset_of(rel.ground().full()) {
        return Err(Error::Precondition(format!(
            "{y} is not a subset of the ground set"
        )));
    }
    let sub = restrict(rel, y)?;
    let mut restricted_class: Vec<SubsetMask> = submasks(y)
        .map(|a| {
            let local = sub_dual(&sub, a.compress(y));
            local.expand(y)
        })
        .collect();
    sort_family(&mut restricted_class);

    let dual_y = rel.c_dual(y);
    let mut cut_class: Vec<SubsetMask> = rel
        .image_class()?
        .into_iter()
        .filter(|b| dual_y.is_subset_of(*b))
        .map(|b| b.intersection(y))
        .collect();
    sort_family(&mut cut_class);

    let hypothesis_met = rel.is_closed(y);
    let trace_holds = restricted_class
        .iter()
        .all(|a| rel.envelope(*a).intersection(y) == *a);
    Ok(SubclassReport {
        hypothesis_met,
        classes_agree: hypothesis_met.then(|| restricted_class == cut_class),
        restricted_class,
        cut_class,
        trace_holds,
    })
}

fn sub_dual(sub: &CostRelation, k: SubsetMask) -> SubsetMask {
    if sub.is_empty() {
        SubsetMask::EMPTY
    } else {
        sub.c_dual(k)
    }
}

/// A set `set` covered by `cover` whose image misses part of the meet of
/// the cover's images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionWitness {
    pub set: SubsetMask,
    pub cover: Vec<SubsetMask>,
    pub image: SubsetMask,
    pub cover_meet: SubsetMask,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InclusionVerdict {
    Respects,
    Violated(InclusionWitness),
}

/// Whether `K ⊆ ∪ K_i` forces `T(K) ⊇ ∩ T(K_i)` for all domain members.
///
/// A violating cover exists iff some point `p ∉ T(K)` has
/// `{L : p ∈ T(L)}` covering `K`, so the check is exact and polynomial.
/// The reported cover is pruned to an irredundant one.
pub fn respects_inclusions(t: &SubFamilyTransform) -> InclusionVerdict {
    let g = t.ground();
    for &(k, tk) in t.entries() {
        for p in g.complement(tk).iter() {
            let mut cover: Vec<(SubsetMask, SubsetMask)> = t
                .entries()
                .iter()
                .copied()
                .filter(|e| e.1.contains(p))
                .collect();
            let union = cover.iter().fold(SubsetMask::EMPTY, |u, e| u.union(e.0));
            if !k.is_subset_of(union) {
                continue;
            }
            let mut i = 0;
            while i < cover.len() {
                let rest = cover
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .fold(SubsetMask::EMPTY, |u, (_, e)| u.union(e.0));
                if k.is_subset_of(rest) {
                    cover.remove(i);
                } else {
                    i += 1;
                }
            }
            let cover_meet = cover.iter().fold(g.full(), |m, e| m.intersection(e.1));
            return InclusionVerdict::Violated(InclusionWitness {
                set: k,
                image: tk,
                cover: cover.into_iter().map(|e| e.0).collect(),
                cover_meet,
            });
        }
    }
    InclusionVerdict::Respects
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    Relation(CostRelation),
    NotExtendable { witness: InclusionWitness },
}

/// Extend an ORQI on a sub-family to a c-dual on all of `P(X)`.
///
/// When inclusions are respected the relation `∪ T(K) × T(T(K))` over the
/// domain works; its c-dual is checked against `t` before returning.
pub fn extend_from_subclass(t: &SubFamilyTransform) -> Result<Extension> {
    if let OrqiVerdict::Violated(v) = t.check_orqi() {
        return Err(Error::NotOrqi(v));
    }
    if let InclusionVerdict::Violated(w) = respects_inclusions(t) {
        return Ok(Extension::NotExtendable { witness: w });
    }
    let g = t.ground();
    let mut rows = vec![0u64; g.len()];
    for &(_, tk) in t.entries() {
        let ttk = t.get(tk).expect("closed under the map");
        for x in tk.iter() {
            rows[x] |= ttk.bits();
        }
        for x in ttk.iter() {
            rows[x] |= tk.bits();
        }
    }
    let rel = CostRelation::from_rows(g.clone(), rows)?;
    for &(k, tk) in t.entries() {
        if rel.c_dual(k) != tk {
            return Err(Error::Precondition(format!(
                "extension disagrees on {k}: got {}, expected {tk}",
                rel.c_dual(k)
            )));
        }
    }
    Ok(Extension::Relation(rel))
}

/// `K -> T(∩{L in C : K ⊆ L})`, defined when the domain is closed under
/// intersection and contains the whole ground set.
pub fn hull_extension(t: &SubFamilyTransform) -> Result<TransformTable> {
    let g = t.ground();
    if t.get(g.full()).is_none() {
        return Err(Error::Precondition(
            "domain must contain the ground set".into(),
        ));
    }
    for a in t.domain() {
        for b in t.domain() {
            if t.get(a.intersection(b)).is_none() {
                return Err(Error::Precondition(format!(
                    "domain is not closed under {a} ∩ {b}"
                )));
            }
        }
    }
    TransformTable::from_fn(g.clone(), |k| {
        let hull = t
            .domain()
            .filter(|l| k.is_subset_of(*l))
            .fold(g.full(), |h, l| h.intersection(l));
        t.get(hull).expect("intersection closed")
    })
}

/// The c-dual of the restriction to `m0`, in the parent's coordinates.
pub fn restricted_dual(rel: &CostRelation, m0: SubsetMask, k: SubsetMask) -> SubsetMask {
    rel.c_dual(k).intersection(m0)
}
