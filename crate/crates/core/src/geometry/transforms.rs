use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::halfspace::{ClassMembership, Degenerate, Halfspace, HalfspaceSet, Sense};
use super::region::{dist, dot, norm, DirectionGrid, MembershipOracle, PointSet, Region};
use crate::error::{Error, Result};

fn nonempty(p: &PointSet) -> Result<()> {
    if p.is_empty() {
        Err(Error::Empty("generator set"))
    } else {
        Ok(())
    }
}

/// `{y : ⟨x, y⟩ <= 1 for all x in P}`. Zero generators impose nothing and
/// are dropped.
pub fn polar(p: &PointSet) -> Result<HalfspaceSet> {
    nonempty(p)?;
    let mut out = HalfspaceSet::whole(p.dim());
    for x in p.iter().filter(|x| x.iter().any(|v| *v != 0.0)) {
        out.push(Halfspace {
            normal: x.to_vec(),
            offset: 1.0,
            sense: Sense::Le,
        })?;
    }
    Ok(out)
}

/// `{y : ⟨x, y⟩ >= 1 for all x in P}`. A zero generator makes it empty.
pub fn dual_polar(p: &PointSet) -> Result<HalfspaceSet> {
    nonempty(p)?;
    let mut out = HalfspaceSet::whole(p.dim());
    for x in p.iter() {
        if x.iter().all(|v| *v == 0.0) {
            return Ok(HalfspaceSet::empty(p.dim()));
        }
        out.push(Halfspace {
            normal: x.to_vec(),
            offset: 1.0,
            sense: Sense::Ge,
        })?;
    }
    Ok(out)
}

#[derive(Clone)]
pub enum Metric {
    Euclidean,
    Manhattan,
    Chebyshev,
    Custom(Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>),
}

impl fmt::Debug for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Euclidean => write!(f, "Euclidean"),
            Metric::Manhattan => write!(f, "Manhattan"),
            Metric::Chebyshev => write!(f, "Chebyshev"),
            Metric::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl Metric {
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => dist(a, b),
            Metric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            Metric::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
            Metric::Custom(f) => f(a, b),
        }
    }
}

/// Points at distance at least `eps` from every generator.
pub fn neighborhood_complement(p: &PointSet, eps: f64, metric: Metric) -> Result<MembershipOracle> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    let p = p.clone();
    Ok(MembershipOracle::new(p.dim(), move |y| {
        p.iter()
            .map(|x| metric.distance(x, y))
            .fold(f64::INFINITY, f64::min)
            - eps
    }))
}

/// Points within distance `eps` of every generator.
pub fn ball_intersection(p: &PointSet, eps: f64) -> Result<MembershipOracle> {
    nonempty(p)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    let p = p.clone();
    Ok(MembershipOracle::new(p.dim(), move |y| {
        eps - p.iter().map(|x| dist(x, y)).fold(0.0, f64::max)
    }))
}

/// `{y : ⟨x, y⟩ < |x|²|y|²/2 for all x in P}`, a strict inequality.
///
/// For `x ≠ 0` the condition says `y` lies outside the closed ball of
/// radius `|z|` around `z = x/|x|²`; the slack is the distance to that ball.
/// The origin relates to nothing, so a zero generator empties the set.
pub fn flower_dual(p: &PointSet) -> Result<MembershipOracle> {
    nonempty(p)?;
    if p.iter().any(|x| x.iter().all(|v| *v == 0.0)) {
        return Ok(MembershipOracle::new(p.dim(), |_| f64::NEG_INFINITY).strict());
    }
    let centers = p.map(|x| {
        let r2 = dot(x, x);
        x.iter().map(|v| v / r2).collect()
    })?;
    Ok(MembershipOracle::new(p.dim(), move |y| {
        centers
            .iter()
            .map(|z| dist(y, z) - norm(z))
            .fold(f64::INFINITY, f64::min)
    })
    .strict())
}

/// `{y : h_P(θ) ⟨y, θ⟩ <= 1 for every grid direction θ}`, skipping
/// directions where the support function is not positive.
pub fn reciprocal(p: &PointSet, directions: &DirectionGrid) -> Result<HalfspaceSet> {
    nonempty(p)?;
    p.require_dim(directions.dim())?;
    let mut out = HalfspaceSet::whole(p.dim());
    for th in directions.iter() {
        let h = p
            .iter()
            .map(|x| dot(x, th))
            .fold(f64::NEG_INFINITY, f64::max);
        if h > 0.0 {
            out.push(Halfspace {
                normal: th.iter().map(|v| h * v).collect(),
                offset: 1.0,
                sense: Sense::Le,
            })?;
        }
    }
    Ok(out)
}

/// `{y : (1-λ)|x||y| + λ⟨x, y⟩ <= 1 for all x in P}` for `λ ∈ [0, 1]`.
pub fn reciprocal_type(p: &PointSet, lambda: f64) -> Result<MembershipOracle> {
    nonempty(p)?;
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Precondition(format!(
            "lambda {lambda} outside [0, 1]"
        )));
    }
    let p = p.clone();
    let norms: Vec<f64> = p.iter().map(norm).collect();
    Ok(MembershipOracle::new(p.dim(), move |y| {
        let ny = norm(y);
        let worst = p
            .iter()
            .zip(&norms)
            .map(|(x, nx)| (1.0 - lambda) * nx * ny + lambda * dot(x, y))
            .fold(f64::NEG_INFINITY, f64::max);
        1.0 - worst
    }))
}

/// `{y : Σ |x_i||y_i| <= 1 for all x in P}`.
pub fn unconditional_dual(p: &PointSet) -> Result<MembershipOracle> {
    nonempty(p)?;
    let p = p.clone();
    Ok(MembershipOracle::new(p.dim(), move |y| {
        let worst = p
            .iter()
            .map(|x| x.iter().zip(y).map(|(a, b)| a.abs() * b.abs()).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        1.0 - worst
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeLikeVerdict {
    ConeLike,
    ContainsOrigin,
    /// `point` is a member but `scale * point` is not.
    NotClosedUnderScaling {
        point: Vec<f64>,
        scale: f64,
    },
}

/// Sampled test of `λK ⊆ K` for `λ >= 1`, plus `0 ∉ K`.
pub fn cone_like_check(
    k: &dyn Region,
    samples: &PointSet,
    scales: &[f64],
) -> Result<ConeLikeVerdict> {
    samples.require_dim(k.dim())?;
    if scales.iter().any(|s| *s < 1.0) {
        return Err(Error::Precondition("scales must be at least 1".into()));
    }
    if k.contains(&vec![0.0; k.dim()]) {
        return Ok(ConeLikeVerdict::ContainsOrigin);
    }
    let mut y = vec![0.0; k.dim()];
    for x in samples.iter().filter(|x| k.contains(x)) {
        for &s in scales {
            for (a, b) in y.iter_mut().zip(x) {
                *a = s * b;
            }
            if !k.contains(&y) {
                return Ok(ConeLikeVerdict::NotClosedUnderScaling {
                    point: x.to_vec(),
                    scale: s,
                });
            }
        }
    }
    Ok(ConeLikeVerdict::ConeLike)
}

/// Distance along the ray `r u` at which a cone-like region is entered, or
/// `inf` if `r_max u` is still outside.
fn entry_radius(k: &dyn Region, u: &[f64], r_max: f64) -> f64 {
    let at = |r: f64| k.contains(&u.iter().map(|v| r * v).collect::<Vec<_>>());
    if !at(r_max) {
        return f64::INFINITY;
    }
    let (mut lo, mut hi) = (0.0, r_max);
    while hi - lo > 1e-15 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if at(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Closest point to the origin of a closed cone-like region given by an
/// oracle: minimise the ray entry distance over a direction grid, then
/// refine by a shrinking pattern search on the sphere.
pub fn subclass_of_region(
    k: &dyn Region,
    directions: &DirectionGrid,
    r_max: f64,
) -> Result<ClassMembership> {
    let n = k.dim();
    if directions.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            got: directions.dim(),
        });
    }
    if k.contains(&vec![0.0; n]) {
        return Ok(ClassMembership::Degenerate(Degenerate::ContainsOrigin));
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for u in directions.iter() {
        let r = entry_radius(k, u, r_max);
        if best.as_ref().is_none_or(|b| r < b.0) {
            best = Some((r, u.to_vec()));
        }
    }
    let (mut r, mut u) = best.ok_or(Error::Empty("direction grid"))?;
    if !r.is_finite() {
        return Ok(ClassMembership::Degenerate(Degenerate::Empty));
    }
    let mut step = 2.0 * std::f64::consts::PI / directions.len() as f64;
    while step > 1e-12 {
        let mut improved = false;
        for axis in 0..n {
            for sign in [-1.0, 1.0] {
                let mut v = u.clone();
                v[axis] += sign * step;
                let l = norm(&v);
                v.iter_mut().for_each(|c| *c /= l);
                let rv = entry_radius(k, &v, r_max);
                if rv < r {
                    r = rv;
                    u = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(ClassMembership::Class {
        direction: u,
        distance: r,
    })
}

/// Convex hull of planar points, counter-clockwise, collinear points dropped.
pub fn convex_hull_2d(p: &PointSet) -> Result<PointSet> {
    p.require_dim(2)?;
    let mut pts: Vec<[f64; 2]> = p.iter().map(|x| [x[0], x[1]]).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup();
    if pts.len() < 3 {
        return PointSet::from_rows(&pts);
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &q in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0
            {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    PointSet::from_rows(&hull)
}

/// Halfspace description of the convex hull of planar points.
pub fn polygon_region(vertices: &PointSet) -> Result<HalfspaceSet> {
    let hull = convex_hull_2d(vertices)?;
    if hull.len() < 3 {
        return Err(Error::Precondition(
            "polygon needs three affinely independent vertices".into(),
        ));
    }
    let mut out = HalfspaceSet::whole(2);
    for i in 0..hull.len() {
        let a = hull.point(i);
        let b = hull.point((i + 1) % hull.len());
        let normal = vec![b[1] - a[1], a[0] - b[0]];
        let offset = dot(&normal, a);
        out.push(Halfspace {
            normal,
            offset,
            sense: Sense::Le,
        })?;
    }
    Ok(out)
}

/// Reuleaux triangle of width `eps`: vertices on a circle around the origin,
/// region as the intersection of the three disks, boundary sampled with
/// `per_arc` points on each arc.
pub fn reuleaux_triangle(eps: f64, per_arc: usize) -> (PointSet, MembershipOracle) {
    let r = eps / 3f64.sqrt();
    let verts: Vec<[f64; 2]> = (0..3)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            [r * a.cos(), r * a.sin()]
        })
        .collect();
    let mut boundary = PointSet::new(2);
    for k in 0..3 {
        // The arc opposite vertex k is centred at k and joins the other two.
        let c = verts[k];
        let a = verts[(k + 1) % 3];
        let b = verts[(k + 2) % 3];
        let t0 = (a[1] - c[1]).atan2(a[0] - c[0]);
        let t1 = (b[1] - c[1]).atan2(b[0] - c[0]);
        let mut span = t1 - t0;
        if span > std::f64::consts::PI {
            span -= 2.0 * std::f64::consts::PI;
        } else if span <= -std::f64::consts::PI {
            span += 2.0 * std::f64::consts::PI;
        }
        for i in 0..per_arc {
            let t = t0 + span * i as f64 / per_arc as f64;
            boundary
                .push(&[c[0] + eps * t.cos(), c[1] + eps * t.sin()])
                .expect("finite");
        }
    }
    let region = MembershipOracle::new(2, move |y| {
        verts
            .iter()
            .map(|v| eps - dist(v, y))
            .fold(f64::INFINITY, f64::min)
    });
    (boundary, region)
}
