use serde::{Deserialize, Serialize};

use super::region::{dot, norm, Region};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

/// `⟨normal, y⟩ <= offset` or `>= offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub sense: Sense,
}

impl Halfspace {
    pub fn satisfied(&self, y: &[f64]) -> bool {
        let v = dot(&self.normal, y);
        match self.sense {
            Sense::Le => v <= self.offset,
            Sense::Ge => v >= self.offset,
        }
    }

    /// Signed distance to the bounding hyperplane. Constant constraints
    /// (zero normal) give ±inf.
    pub fn slack(&self, y: &[f64]) -> f64 {
        let r = norm(&self.normal);
        let v = dot(&self.normal, y);
        let s = match self.sense {
            Sense::Le => self.offset - v,
            Sense::Ge => v - self.offset,
        };
        if r == 0.0 {
            if s >= 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            s / r
        }
    }

    /// Same halfspace written with a unit normal, as `(unit normal, offset)`.
    pub fn normalized(&self) -> Option<(Vec<f64>, f64)> {
        let r = norm(&self.normal);
        (r > 0.0).then(|| (self.normal.iter().map(|v| v / r).collect(), self.offset / r))
    }
}

/// Intersection of closed halfspaces. No constraints means all of R^dim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceSet {
    pub dim: usize,
    pub constraints: Vec<Halfspace>,
}

impl HalfspaceSet {
    pub fn whole(dim: usize) -> Self {
        HalfspaceSet {
            dim,
            constraints: Vec::new(),
        }
    }

    /// The empty set, written as the single constraint `0 >= 1`.
    pub fn empty(dim: usize) -> Self {
        HalfspaceSet {
            dim,
            constraints: vec![Halfspace {
                normal: vec![0.0; dim],
                offset: 1.0,
                sense: Sense::Ge,
            }],
        }
    }

    pub fn push(&mut self, h: Halfspace) -> Result<()> {
        if h.normal.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: h.normal.len(),
            });
        }
        if h.normal.iter().any(|v| !v.is_finite()) || !h.offset.is_finite() {
            return Err(Error::NonFinite);
        }
        self.constraints.push(h);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// `{-y : y in self}`.
    pub fn negated(&self) -> Self {
        HalfspaceSet {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.iter().map(|v| -v).collect(),
                    ..h.clone()
                })
                .collect(),
        }
    }

    /// Largest violation `max(0, -slack)` over all constraints.
    pub fn violation(&self, y: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|h| (-h.slack(y)).max(0.0))
            .fold(0.0, f64::max)
    }
}

impl Region for HalfspaceSet {
    fn dim(&self) -> usize {
        self.dim
    }

    fn slack(&self, y: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|h| h.slack(y))
            .fold(f64::INFINITY, f64::min)
    }

    fn contains(&self, y: &[f64]) -> bool {
        self.constraints.iter().all(|h| h.satisfied(y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degenerate {
    WholeSpace,
    Empty,
    ContainsOrigin,
}

/// Which `C_{u,a}` a closed convex set belongs to: its closest point to the
/// origin is `a u` with `|u| = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassMembership {
    Class { direction: Vec<f64>, distance: f64 },
    Degenerate(Degenerate),
}

impl ClassMembership {
    pub fn direction(&self) -> Option<&[f64]> {
        match self {
            ClassMembership::Class { direction, .. } => Some(direction),
            ClassMembership::Degenerate(_) => None,
        }
    }

    pub fn distance(&self) -> Option<f64> {
        match self {
            ClassMembership::Class { distance, .. } => Some(*distance),
            ClassMembership::Degenerate(_) => None,
        }
    }
}

const CLOSEST_TOL: f64 = 1e-9;
const CLOSEST_MAX_SWEEPS: usize = 10_000;

/// Nearest point of `k` to `target` by Dykstra's cyclic projections onto the
/// constraints. `None` if the constraints are inconsistent.
pub fn closest_point(k: &HalfspaceSet, target: &[f64]) -> Option<Vec<f64>> {
    let n = k.dim;
    let m = k.constraints.len();
    let mut x = target.to_vec();
    let mut incr = vec![vec![0.0; n]; m];
    let mut y = vec![0.0; n];
    for _ in 0..CLOSEST_MAX_SWEEPS {
        let before = x.clone();
        for (h, p) in k.constraints.iter().zip(incr.iter_mut()) {
            for j in 0..n {
                y[j] = x[j] + p[j];
            }
            project(h, &y, &mut x);
            for j in 0..n {
                p[j] = y[j] - x[j];
            }
        }
        let moved = x
            .iter()
            .zip(&before)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if moved < CLOSEST_TOL * 1e-3 && k.violation(&x) < CLOSEST_TOL {
            return Some(x);
        }
    }
    (k.violation(&x) < CLOSEST_TOL).then_some(x)
}

fn project(h: &Halfspace, y: &[f64], out: &mut [f64]) {
    out.copy_from_slice(y);
    let r2 = dot(&h.normal, &h.normal);
    if r2 == 0.0 {
        return;
    }
    let v = dot(&h.normal, y);
    let excess = match h.sense {
        Sense::Le => v - h.offset,
        Sense::Ge => h.offset - v,
    };
    if excess > 0.0 {
        let step = match h.sense {
            Sense::Le => -excess / r2,
            Sense::Ge => excess / r2,
        };
        for (o, a) in out.iter_mut().zip(&h.normal) {
            *o += step * a;
        }
    }
}

/// Closest point to the origin of a polyhedron, as direction and distance.
pub fn subclass_of(k: &HalfspaceSet) -> ClassMembership {
    if k.constraints
        .iter()
        .all(|h| h.normal.iter().all(|v| *v == 0.0) && h.satisfied(&vec![0.0; k.dim]))
    {
        return ClassMembership::Degenerate(Degenerate::WholeSpace);
    }
    match closest_point(k, &vec![0.0; k.dim]) {
        None => ClassMembership::Degenerate(Degenerate::Empty),
        Some(x) => {
            let a = norm(&x);
            if a < CLOSEST_TOL {
                ClassMembership::Degenerate(Degenerate::ContainsOrigin)
            } else {
                ClassMembership::Class {
                    direction: x.iter().map(|v| v / a).collect(),
                    distance: a,
                }
            }
        }
    }
}
