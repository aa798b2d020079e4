use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a [`SubsetMask`] can address.
pub const MAX_GROUND: usize = 64;

/// A subset of a ground set, one bit per element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SubsetMask(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// Renumber the members of `self` (which must lie inside `within`) as
    /// positions inside `within`.
    pub fn compress(self, within: SubsetMask) -> SubsetMask {
        let mut out = 0u64;
        for (pos, i) in within.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << pos;
            }
        }
        SubsetMask(out)
    }

    /// Inverse of [`compress`](Self::compress).
    pub fn expand(self, within: SubsetMask) -> SubsetMask {
        let mut out = 0u64;
        for (pos, i) in within.iter().enumerate() {
            if self.contains(pos) {
                out |= 1 << i;
            }
        }
        SubsetMask(out)
    }

    /// Family order: cardinality first, then the sorted index lists compared
    /// lexicographically.
    pub fn family_cmp(self, other: SubsetMask) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Sort a family by [`SubsetMask::family_cmp`] and drop duplicates.
pub fn sort_family(family: &mut Vec<SubsetMask>) {
    family.sort_by(|a, b| a.family_cmp(*b));
    family.dedup();
}

/// Every subset of `m`, starting from the empty set.
pub fn submasks(m: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let full = m.0;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full {
            None
        } else {
            Some((cur.wrapping_sub(full)) & full)
        };
        Some(SubsetMask(cur))
    })
}

/// Finite labelled ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_GROUND {
            return Err(Error::GroundSize {
                got: labels.len(),
                max: MAX_GROUND,
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Labels "1", "2", ..., "n".
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((1..=n).map(|i| i.to_string()))
    }

    /// The ground set with no elements. Only restriction produces it.
    pub fn empty() -> Self {
        GroundSet { labels: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn full(&self) -> SubsetMask {
        match self.len() {
            64 => SubsetMask(u64::MAX),
            n => SubsetMask((1u64 << n) - 1),
        }
    }

    pub fn complement(&self, m: SubsetMask) -> SubsetMask {
        self.full().difference(m)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn mask<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        let mut m = SubsetMask::EMPTY;
        for l in labels {
            m.insert(self.index_of(l.as_ref())?);
        }
        Ok(m)
    }

    pub fn names(&self, m: SubsetMask) -> Vec<String> {
        m.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Map key used by the JSON table format: member labels joined by commas.
    pub(crate) fn key(&self, m: SubsetMask) -> String {
        self.names(m).join(",")
    }

    pub(crate) fn parse_key(&self, key: &str) -> Result<SubsetMask> {
        if key.is_empty() {
            return Ok(SubsetMask::EMPTY);
        }
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        self.mask(&parts)
    }

    pub(crate) fn check_keyable(&self) -> Result<()> {
        match self.labels.iter().find(|l| l.contains(',')) {
            Some(l) => Err(Error::BadLabel(l.clone())),
            None => Ok(()),
        }
    }

    /// Sub-ground-set made of the members of `m`, in index order.
    pub fn restrict(&self, m: SubsetMask) -> GroundSet {
        GroundSet {
            labels: self.names(m),
        }
    }
}

impl TryFrom<Vec<String>> for GroundSet {
    type Error = Error;

    fn try_from(labels: Vec<String>) -> Result<Self> {
        GroundSet::new(labels)
    }
}

impl From<GroundSet> for Vec<String> {
    fn from(g: GroundSet) -> Self {
        g.labels
    }
}
