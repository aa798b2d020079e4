use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// A subset of R^n described by a signed slack: positive inside, negative
/// outside, zero on the boundary. Where it is cheap the slack is a distance.
pub trait Region: Send + Sync {
    fn dim(&self) -> usize;

    fn slack(&self, y: &[f64]) -> f64;

    fn contains(&self, y: &[f64]) -> bool {
        self.slack(y) >= 0.0
    }
}

impl<R: Region + ?Sized> Region for Arc<R> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn slack(&self, y: &[f64]) -> f64 {
        (**self).slack(y)
    }
    fn contains(&self, y: &[f64]) -> bool {
        (**self).contains(y)
    }
}

impl<R: Region + ?Sized> Region for &R {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn slack(&self, y: &[f64]) -> f64 {
        (**self).slack(y)
    }
    fn contains(&self, y: &[f64]) -> bool {
        (**self).contains(y)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundingBox {
    pub fn cube(dim: usize, r: f64) -> Self {
        BoundingBox {
            lo: vec![-r; dim],
            hi: vec![r; dim],
        }
    }
}

type SlackFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// Region given by a slack closure. Strict oracles exclude the zero set.
#[derive(Clone)]
pub struct MembershipOracle {
    dim: usize,
    slack: Arc<SlackFn>,
    strict: bool,
    bbox: Option<BoundingBox>,
}

impl fmt::Debug for MembershipOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MembershipOracle")
            .field("dim", &self.dim)
            .field("strict", &self.strict)
            .field("bbox", &self.bbox)
            .finish()
    }
}

impl MembershipOracle {
    pub fn new(dim: usize, slack: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        MembershipOracle {
            dim,
            slack: Arc::new(slack),
            strict: false,
            bbox: None,
        }
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub fn with_bbox(mut self, bbox: BoundingBox) -> Self {
        self.bbox = Some(bbox);
        self
    }

    pub fn bbox(&self) -> Option<&BoundingBox> {
        self.bbox.as_ref()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Wrap any region.
    pub fn from_region<R: Region + 'static>(r: R) -> Self {
        let dim = r.dim();
        MembershipOracle::new(dim, move |y| r.slack(y))
    }

    /// `{-y : y in self}`.
    pub fn negated(&self) -> Self {
        let inner = self.slack.clone();
        MembershipOracle {
            dim: self.dim,
            slack: Arc::new(move |y: &[f64]| {
                let m: Vec<f64> = y.iter().map(|v| -v).collect();
                inner(&m)
            }),
            strict: self.strict,
            bbox: self.bbox.as_ref().map(|b| BoundingBox {
                lo: b.hi.iter().map(|v| -v).collect(),
                hi: b.lo.iter().map(|v| -v).collect(),
            }),
        }
    }
}

impl Region for MembershipOracle {
    fn dim(&self) -> usize {
        self.dim
    }

    fn slack(&self, y: &[f64]) -> f64 {
        (self.slack)(y)
    }

    fn contains(&self, y: &[f64]) -> bool {
        let s = (self.slack)(y);
        if self.strict {
            s > 0.0
        } else {
            s >= 0.0
        }
    }
}

/// Finite set of points in R^dim, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointSetJson", into = "PointSetJson")]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PointSetJson {
    points: Vec<Vec<f64>>,
}

impl TryFrom<PointSetJson> for PointSet {
    type Error = Error;
    fn try_from(j: PointSetJson) -> Result<Self> {
        PointSet::from_rows(&j.points)
    }
}

impl From<PointSet> for PointSetJson {
    fn from(p: PointSet) -> Self {
        PointSetJson {
            points: p.iter().map(<[f64]>::to_vec).collect(),
        }
    }
}

impl PointSet {
    pub fn new(dim: usize) -> Self {
        PointSet {
            dim,
            coords: Vec::new(),
        }
    }

    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::Dimension {
                expected: dim,
                got: coords.len(),
            });
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty("point set"))?;
        let dim = first.as_ref().len();
        let mut p = PointSet::new(dim);
        for r in rows {
            p.push(r.as_ref())?;
        }
        Ok(p)
    }

    pub fn push(&mut self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: x.len(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        self.coords.extend_from_slice(x);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn map(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<PointSet> {
        let mut out = PointSet::new(self.dim);
        for p in self.iter() {
            out.push(&f(p))?;
        }
        Ok(out)
    }

    pub fn extend(&mut self, other: &PointSet) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        self.coords.extend_from_slice(&other.coords);
        Ok(())
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: self.dim,
            });
        }
        Ok(())
    }
}

/// Regular grid with `per_axis` nodes on each axis of a box, ends included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub per_axis: usize,
}

impl Grid {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, per_axis: usize) -> Self {
        assert_eq!(lo.len(), hi.len());
        assert!(per_axis >= 2);
        Grid { lo, hi, per_axis }
    }

    pub fn cube(dim: usize, lo: f64, hi: f64, per_axis: usize) -> Self {
        Grid::new(vec![lo; dim], vec![hi; dim], per_axis)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn len(&self) -> usize {
        self.per_axis.pow(self.dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        let t = i as f64 / (self.per_axis - 1) as f64;
        self.lo[axis] + t * (self.hi[axis] - self.lo[axis])
    }

    /// Largest side length, used to scale boundary bands.
    pub fn scale(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a).abs())
            .fold(0.0, f64::max)
    }

    pub fn for_each(&self, mut f: impl FnMut(&[f64])) {
        let d = self.dim();
        let mut idx = vec![0usize; d];
        let mut p: Vec<f64> = (0..d).map(|a| self.coord(a, 0)).collect();
        loop {
            f(&p);
            let mut a = 0;
            loop {
                if a == d {
                    return;
                }
                idx[a] += 1;
                if idx[a] < self.per_axis {
                    p[a] = self.coord(a, idx[a]);
                    break;
                }
                idx[a] = 0;
                p[a] = self.coord(a, 0);
                a += 1;
            }
        }
    }
}

/// Unit vectors used to discretise suprema over the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionGrid {
    dirs: PointSet,
}

impl DirectionGrid {
    /// `m` equally spaced angles on the circle, starting at angle 0.
    pub fn circle(m: usize) -> Self {
        let mut dirs = PointSet::new(2);
        for k in 0..m {
            let a = 2.0 * PI * k as f64 / m as f64;
            dirs.push(&[a.cos(), a.sin()]).expect("finite");
        }
        DirectionGrid { dirs }
    }

    /// Fibonacci lattice with `m` points on the unit sphere in R^3.
    pub fn fibonacci_sphere(m: usize) -> Self {
        let golden = PI * (3.0 - 5f64.sqrt());
        let mut dirs = PointSet::new(3);
        for k in 0..m {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
            let r = (1.0 - z * z).sqrt();
            let a = golden * k as f64;
            dirs.push(&[r * a.cos(), r * a.sin(), z]).expect("finite");
        }
        DirectionGrid { dirs }
    }

    /// 720 angles in the plane, 2000 Fibonacci points in space.
    pub fn default_for(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(DirectionGrid::circle(720)),
            3 => Ok(DirectionGrid::fibonacci_sphere(2000)),
            d => Err(Error::Precondition(format!(
                "no default direction grid in dimension {d}"
            ))),
        }
    }

    pub fn from_points(p: PointSet) -> Result<Self> {
        let mut dirs = PointSet::new(p.dim());
        for x in p.iter() {
            let r = norm(x);
            if r == 0.0 {
                return Err(Error::Precondition("zero direction".into()));
            }
            dirs.push(&x.iter().map(|v| v / r).collect::<Vec<_>>())?;
        }
        Ok(DirectionGrid { dirs })
    }

    pub fn dim(&self) -> usize {
        self.dirs.dim()
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.dirs.iter()
    }

    pub fn points(&self) -> &PointSet {
        &self.dirs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Agreement {
    pub agree: usize,
    pub compared: usize,
    /// Grid points within the boundary band of either region.
    pub excluded: usize,
    pub fraction: f64,
}

/// Compare two regions on a grid, skipping points whose slack in either
/// region is within `band` of zero.
pub fn agreement(a: &dyn Region, b: &dyn Region, grid: &Grid, band: f64) -> Agreement {
    let (mut agree, mut compared, mut excluded) = (0, 0, 0);
    grid.for_each(|y| {
        let (sa, sb) = (a.slack(y), b.slack(y));
        if sa.abs() <= band || sb.abs() <= band {
            excluded += 1;
            return;
        }
        compared += 1;
        if a.contains(y) == b.contains(y) {
            agree += 1;
        }
    });
    let fraction = if compared == 0 {
        1.0
    } else {
        agree as f64 / compared as f64
    };
    Agreement {
        agree,
        compared,
        excluded,
        fraction,
    }
}

/// Grid points that lie in `r`: the sampled conversion from an oracle to a
/// generator set.
pub fn sample_members(r: &dyn Region, grid: &Grid) -> PointSet {
    let mut out = PointSet::new(grid.dim());
    grid.for_each(|y| {
        if r.contains(y) {
            out.push(y).expect("grid points are finite");
        }
    });
    out
}
