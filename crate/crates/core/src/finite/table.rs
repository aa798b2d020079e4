use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ground::{sort_family, GroundSet, SubsetMask};
use crate::error::{Error, Result};

/// Largest ground set for which a full `2^n` table is stored.
pub const MAX_TABLE: usize = 16;

/// A map `P(X) -> P(X)` stored as a table indexed by subset mask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct TransformTable {
    ground: GroundSet,
    map: Vec<SubsetMask>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    labels: Vec<String>,
    map: BTreeMap<String, Vec<String>>,
}

impl TryFrom<TableJson> for TransformTable {
    type Error = Error;

    fn try_from(j: TableJson) -> Result<Self> {
        let g = GroundSet::new(j.labels)?;
        if g.len() > MAX_TABLE {
            return Err(Error::TooLarge {
                n: g.len(),
                max: MAX_TABLE,
            });
        }
        let mut map = vec![None; 1 << g.len()];
        for (k, v) in &j.map {
            map[g.parse_key(k)?.bits() as usize] = Some(g.mask(v)?);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| {
                    Error::Precondition(format!(
                        "table has no entry for {}",
                        g.key(SubsetMask(k as u64))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(TransformTable { ground: g, map })
    }
}

impl From<TransformTable> for TableJson {
    fn from(t: TransformTable) -> Self {
        let map = (0..t.map.len())
            .map(|k| {
                let k = SubsetMask(k as u64);
                (t.ground.key(k), t.ground.names(t.apply(k)))
            })
            .collect();
        TableJson {
            labels: t.ground.into(),
            map,
        }
    }
}

impl TransformTable {
    pub fn from_fn(ground: GroundSet, f: impl Fn(SubsetMask) -> SubsetMask) -> Result<Self> {
        let n = ground.len();
        if n > MAX_TABLE {
            return Err(Error::TooLarge { n, max: MAX_TABLE });
        }
        let full = ground.full();
        let map = (0..1u64 << n)
            .map(|k| {
                let v = f(SubsetMask(k));
                if v.is_subset_of(full) {
                    Ok(v)
                } else {
                    Err(Error::Precondition(format!(
                        "image of {} leaves the ground set",
                        SubsetMask(k)
                    )))
                }
            })
            .collect::<Result<_>>()?;
        ground.check_keyable()?;
        Ok(TransformTable { ground, map })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn apply(&self, k: SubsetMask) -> SubsetMask {
        self.map[k.bits() as usize]
    }

    pub fn compose(&self, other: &TransformTable) -> Result<TransformTable> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        TransformTable::from_fn(self.ground.clone(), |k| self.apply(other.apply(k)))
    }

    /// Distinct images, sorted by (cardinality, lexicographic).
    pub fn image(&self) -> Vec<SubsetMask> {
        let mut out = self.map.clone();
        sort_family(&mut out);
        out
    }
}

/// Largest ground set for [`lattice_law_exhaustive`], which visits all
/// `2^(2^n)` families.
pub const MAX_EXHAUSTIVE_LAW: usize = 4;

/// Check `T(union F) = intersection of T(K), K in F` for every family `F`
/// of subsets, the empty family included. Returns the first failing family.
pub fn lattice_law_exhaustive(t: &TransformTable) -> Result<Option<Vec<SubsetMask>>> {
    let n = t.ground().len();
    if n > MAX_EXHAUSTIVE_LAW {
        return Err(Error::TooLarge {
            n,
            max: MAX_EXHAUSTIVE_LAW,
        });
    }
    let sets = 1usize << n;
    let families = 1usize << sets;
    let full = t.ground().full();
    // Family `f` holds subset `k` when bit `k` of `f` is set.
    let mut union = vec![SubsetMask::EMPTY; families];
    let mut meet = vec![full; families];
    for f in 0..families {
        if f > 0 {
            let low = f.trailing_zeros() as u64;
            let rest = f & (f - 1);
            union[f] = union[rest].union(SubsetMask(low));
            meet[f] = meet[rest].intersection(t.apply(SubsetMask(low)));
        }
        if t.apply(union[f]) != meet[f] {
            let members = (0..sets as u64)
                .filter(|k| f >> k & 1 == 1)
                .map(SubsetMask)
                .collect();
            return Ok(Some(members));
        }
    }
    Ok(None)
}

/// Why a table fails to be an order reversing quasi involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrqiViolation {
    /// `set` is not contained in the image of its image.
    NotQuasiInvolution {
        set: SubsetMask,
        double_image: SubsetMask,
    },
    /// `smaller` is inside `larger` but `T(larger)` is not inside `T(smaller)`.
    NotOrderReversing {
        smaller: SubsetMask,
        larger: SubsetMask,
    },
}

impl fmt::Display for OrqiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrqiViolation::NotQuasiInvolution { set, double_image } => {
                write!(f, "{set} is not contained in T(T({set})) = {double_image}")
            }
            OrqiViolation::NotOrderReversing { smaller, larger } => {
                write!(
                    f,
                    "{smaller} is inside {larger} but T({larger}) is not inside T({smaller})"
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrqiVerdict {
    Orqi,
    Violated(OrqiViolation),
}

impl OrqiVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, OrqiVerdict::Orqi)
    }
}

/// Decide whether `t` is an ORQI.
///
/// Order reversal only has to be checked on covering pairs `K \ {x} ⊆ K`:
/// every inclusion is a chain of those, and inclusion of images composes
/// along the chain. So the check is exhaustive at `O(2^n n)` cost.
pub fn is_orqi(t: &TransformTable) -> OrqiVerdict {
    let n = t.ground().len();
    for k in 0..1u64 << n {
        let k = SubsetMask(k);
        let tt = t.apply(t.apply(k));
        if !k.is_subset_of(tt) {
            return OrqiVerdict::Violated(OrqiViolation::NotQuasiInvolution {
                set: k,
                double_image: tt,
            });
        }
    }
    for k in 0..1u64 << n {
        let k = SubsetMask(k);
        let tk = t.apply(k);
        for x in k.iter() {
            let mut l = k;
            l.remove(x);
            if !tk.is_subset_of(t.apply(l)) {
                return OrqiVerdict::Violated(OrqiViolation::NotOrderReversing {
                    smaller: l,
                    larger: k,
                });
            }
        }
    }
    OrqiVerdict::Orqi
}

/// Transform defined only on a sub-family `C` of `P(X)` and mapping into it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SubFamilyJson", into = "SubFamilyJson")]
pub struct SubFamilyTransform {
    ground: GroundSet,
    /// Sorted by domain set.
    entries: Vec<(SubsetMask, SubsetMask)>,
}

#[derive(Serialize, Deserialize)]
struct SubFamilyJson {
    labels: Vec<String>,
    domain: Vec<Vec<String>>,
    map: BTreeMap<String, Vec<String>>,
}

impl TryFrom<SubFamilyJson> for SubFamilyTransform {
    type Error = Error;

    fn try_from(j: SubFamilyJson) -> Result<Self> {
        let g = GroundSet::new(j.labels)?;
        let mut entries = Vec::new();
        for d in &j.domain {
            let k = g.mask(d)?;
            let key = g.key(k);
            let v = j
                .map
                .get(&key)
                .ok_or_else(|| Error::BadSubFamily(format!("no image given for {{{key}}}")))?;
            entries.push((k, g.mask(v)?));
        }
        if j.map.len() != entries.len() {
            return Err(Error::BadSubFamily(
                "map has keys outside the domain".into(),
            ));
        }
        SubFamilyTransform::new(g, entries)
    }
}

impl From<SubFamilyTransform> for SubFamilyJson {
    fn from(s: SubFamilyTransform) -> Self {
        SubFamilyJson {
            domain: s.entries.iter().map(|(k, _)| s.ground.names(*k)).collect(),
            map: s
                .entries
                .iter()
                .map(|(k, v)| (s.ground.key(*k), s.ground.names(*v)))
                .collect(),
            labels: s.ground.into(),
        }
    }
}

impl SubFamilyTransform {
    pub fn new(ground: GroundSet, mut entries: Vec<(SubsetMask, SubsetMask)>) -> Result<Self> {
        ground.check_keyable()?;
        entries.sort_by(|a, b| a.0.family_cmp(b.0));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::BadSubFamily(format!("{} listed twice", w[0].0)));
            }
        }
        let s = SubFamilyTransform { ground, entries };
        for (k, v) in &s.entries {
            if !k.is_subset_of(s.ground.full()) {
                return Err(Error::BadSubFamily(format!("{k} leaves the ground set")));
            }
            if s.get(*v).is_none() {
                return Err(Error::BadSubFamily(format!(
                    "image {v} of {k} is not in the domain"
                )));
            }
        }
        Ok(s)
    }

    /// Restrict a full table to a family closed under it.
    pub fn from_table(t: &TransformTable, domain: &[SubsetMask]) -> Result<Self> {
        SubFamilyTransform::new(
            t.ground().clone(),
            domain.iter().map(|k| (*k, t.apply(*k))).collect(),
        )
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn domain(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn entries(&self) -> &[(SubsetMask, SubsetMask)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: SubsetMask) -> Option<SubsetMask> {
        self.entries
            .binary_search_by(|e| e.0.family_cmp(k))
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// ORQI axioms restricted to pairs of domain members.
    pub fn check_orqi(&self) -> OrqiVerdict {
        for &(k, tk) in &self.entries {
            let tt = self.get(tk).expect("closed under the map");
            if !k.is_subset_of(tt) {
                return OrqiVerdict::Violated(OrqiViolation::NotQuasiInvolution {
                    set: k,
                    double_image: tt,
                });
            }
        }
        for &(l, tl) in &self.entries {
            for &(k, tk) in &self.entries {
                if l.is_subset_of(k) && !tk.is_subset_of(tl) {
                    return OrqiVerdict::Violated(OrqiViolation::NotOrderReversing {
                        smaller: l,
                        larger: k,
                    });
                }
            }
        }
        OrqiVerdict::Orqi
    }
}
