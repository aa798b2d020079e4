use serde::{Deserialize, Serialize};

use super::ground::{sort_family, GroundSet, SubsetMask};
use super::table::{is_orqi, OrqiVerdict, TransformTable, MAX_TABLE};
use crate::error::{Error, Result};

/// Symmetric relation on a finite ground set. `rel(x, y)` is true exactly
/// when the cost threshold `c(x, y) >= 0` holds; the c-dual of `K` is the set
/// of `y` related to every member of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationJson", into = "RelationJson")]
pub struct CostRelation {
    ground: GroundSet,
    rows: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    labels: Vec<String>,
    rel: Vec<Vec<bool>>,
}

impl TryFrom<RelationJson> for CostRelation {
    type Error = Error;

    fn try_from(j: RelationJson) -> Result<Self> {
        CostRelation::from_matrix(GroundSet::new(j.labels)?, &j.rel)
    }
}

impl From<CostRelation> for RelationJson {
    fn from(r: CostRelation) -> Self {
        let n = r.len();
        RelationJson {
            rel: (0..n)
                .map(|x| (0..n).map(|y| r.related(x, y)).collect())
                .collect(),
            labels: r.ground.into(),
        }
    }
}

impl CostRelation {
    /// Build from row bitmasks; row `x` holds the fiber of `x`.
    pub fn from_rows(ground: GroundSet, rows: Vec<u64>) -> Result<Self> {
        let n = ground.len();
        if rows.len() != n {
            return Err(Error::Shape { n });
        }
        let full = ground.full().bits();
        for (x, row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::Shape { n });
            }
            for y in SubsetMask(*row).iter() {
                if rows[y] >> x & 1 == 0 {
                    return Err(Error::Asymmetric(
                        ground.label(x).to_string(),
                        ground.label(y).to_string(),
                    ));
                }
            }
        }
        Ok(CostRelation { ground, rows })
    }

    pub fn from_matrix(ground: GroundSet, rel: &[Vec<bool>]) -> Result<Self> {
        let n = ground.len();
        if rel.len() != n || rel.iter().any(|r| r.len() != n) {
            return Err(Error::Shape { n });
        }
        let rows = rel
            .iter()
            .map(|r| {
                SubsetMask::from_indices(r.iter().enumerate().filter(|e| *e.1).map(|e| e.0)).bits()
            })
            .collect();
        CostRelation::from_rows(ground, rows)
    }

    /// Build from unordered pairs of labels; each pair is added in both directions.
    pub fn from_pairs(ground: GroundSet, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut rows = vec![0u64; ground.len()];
        for (a, b) in pairs {
            let (x, y) = (ground.index_of(a)?, ground.index_of(b)?);
            rows[x] |= 1 << y;
            rows[y] |= 1 << x;
        }
        CostRelation::from_rows(ground, rows)
    }

    /// Relation on a ground set with no elements.
    pub(crate) fn empty() -> Self {
        CostRelation {
            ground: GroundSet::empty(),
            rows: Vec::new(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    /// `{y : rel(x, y)}`.
    pub fn fiber(&self, x: usize) -> SubsetMask {
        SubsetMask(self.rows[x])
    }

    /// c-dual of `k`: intersection of the fibers of its members, X for the empty set.
    pub fn c_dual(&self, k: SubsetMask) -> SubsetMask {
        k.iter()
            .fold(self.ground.full(), |acc, x| acc.intersection(self.fiber(x)))
    }

    /// `c_dual(c_dual(k))`, the smallest c-closed superset of `k`.
    pub fn envelope(&self, k: SubsetMask) -> SubsetMask {
        self.c_dual(self.c_dual(k))
    }

    pub fn is_closed(&self, k: SubsetMask) -> bool {
        self.envelope(k) == k
    }

    /// Tabulate the c-dual on every subset.
    pub fn to_table(&self) -> Result<TransformTable> {
        TransformTable::from_fn(self.ground.clone(), |k| self.c_dual(k))
    }

    /// Every set of the form `c_dual(K)`, sorted by (cardinality, lexicographic).
    pub fn image_class(&self) -> Result<Vec<SubsetMask>> {
        let n = self.len();
        if n > MAX_TABLE {
            return Err(Error::TooLarge { n, max: MAX_TABLE });
        }
        let mut out: Vec<SubsetMask> = (0..1u64 << n).map(|k| self.c_dual(SubsetMask(k))).collect();
        sort_family(&mut out);
        Ok(out)
    }

    /// Check `c_dual(union of family) == intersection of c_dual(member)`.
    pub fn lattice_law_check(&self, family: &[SubsetMask]) -> bool {
        let union = family.iter().fold(SubsetMask::EMPTY, |a, k| a.union(*k));
        let meet = family
            .iter()
            .fold(self.ground.full(), |a, k| a.intersection(self.c_dual(*k)));
        self.c_dual(union) == meet
    }
}

/// The relation `{(x, y) : y in T({x})}` underlying an ORQI table.
///
/// Fails with the first asymmetric pair if the singleton images are not
/// symmetric, and with the violation if `t` is not an ORQI at all.
pub fn induced_relation(t: &TransformTable) -> Result<CostRelation> {
    let g = t.ground().clone();
    let rows: Vec<u64> = (0..g.len())
        .map(|x| t.apply(SubsetMask::singleton(x)).bits())
        .collect();
    for x in 0..g.len() {
        for y in SubsetMask(rows[x]).iter() {
            if rows[y] >> x & 1 == 0 {
                return Err(Error::Asymmetric(
                    g.label(x).to_string(),
                    g.label(y).to_string(),
                ));
            }
        }
    }
    if let OrqiVerdict::Violated(v) = is_orqi(t) {
        return Err(Error::NotOrqi(v));
    }
    CostRelation::from_rows(g, rows)
}
