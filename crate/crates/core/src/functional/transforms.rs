use serde::{Deserialize, Serialize};

use super::grid::GridFunction;
use crate::error::{Error, Result};
use crate::geometry::{dot, Grid, MembershipOracle};

fn finite_nodes(phi: &GridFunction) -> Vec<(Vec<f64>, f64)> {
    phi.nodes()
        .into_iter()
        .zip(phi.values().iter().copied())
        .filter(|(_, v)| v.is_finite())
        .collect()
}

fn same_dim(phi: &GridFunction, out: &Grid) -> Result<()> {
    if out.dim() != phi.dim() {
        return Err(Error::Dimension {
            expected: phi.dim(),
            got: out.dim(),
        });
    }
    Ok(())
}

/// Discrete Legendre transform `sup_x ⟨x, y⟩ - φ(x)` over the nodes of `phi`,
/// evaluated on the same grid.
pub fn legendre(phi: &GridFunction) -> Result<GridFunction> {
    legendre_on(phi, phi.grid())
}

/// [`legendre`] evaluated on another grid.
pub fn legendre_on(phi: &GridFunction, out: &Grid) -> Result<GridFunction> {
    same_dim(phi, out)?;
    if phi.values().contains(&f64::NEG_INFINITY) {
        return Err(Error::Precondition(
            "Legendre input takes the value -inf".into(),
        ));
    }
    let nodes = finite_nodes(phi);
    if nodes.is_empty() {
        return Err(Error::Precondition(
            "input is +inf everywhere, so the transform is -inf".into(),
        ));
    }
    GridFunction::from_fn(out.clone(), |y| {
        nodes
            .iter()
            .map(|(x, v)| dot(x, y) - v)
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

/// Legendre transform together with the nodes whose supremum is attained
/// away from the box boundary. Only those are trusted to lie in the domain
/// of the untruncated transform.
pub fn legendre_with_domain(phi: &GridFunction) -> Result<(GridFunction, Vec<bool>)> {
    if phi.values().contains(&f64::NEG_INFINITY) {
        return Err(Error::Precondition(
            "Legendre input takes the value -inf".into(),
        ));
    }
    let nodes = phi.nodes();
    let vals = phi.values();
    let mut out = Vec::with_capacity(nodes.len());
    let mut dom = Vec::with_capacity(nodes.len());
    for y in &nodes {
        let mut best = (f64::NEG_INFINITY, usize::MAX);
        for (i, x) in nodes.iter().enumerate() {
            if vals[i].is_finite() {
                let v = dot(x, y) - vals[i];
                if v > best.0 {
                    best = (v, i);
                }
            }
        }
        if best.1 == usize::MAX {
            return Err(Error::Precondition(
                "input is +inf everywhere, so the transform is -inf".into(),
            ));
        }
        out.push(best.0);
        dom.push(!phi.on_box_boundary(best.1));
    }
    Ok((GridFunction::new(phi.grid().clone(), out)?, dom))
}

/// Midpoint convexity along each axis, with `tol` relative slack.
/// An infinite node between two finite ones is a violation.
pub fn check_convex(phi: &GridFunction, tol: f64) -> Result<()> {
    let n = phi.grid().per_axis;
    let v = phi.values();
    let mut stride = 1;
    for _ in 0..phi.dim() {
        for idx in 0..v.len() {
            let i = (idx / stride) % n;
            if i == 0 || i == n - 1 {
                continue;
            }
            let (l, c, r) = (v[idx - stride], v[idx], v[idx + stride]);
            if !l.is_finite() || !r.is_finite() {
                continue;
            }
            if c > 0.5 * (l + r) + tol * (1.0 + c.abs().min(1e300)) {
                return Err(Error::NotConvex(idx));
            }
        }
        stride *= n;
    }
    Ok(())
}

/// `sup {(⟨x, y⟩ - 1)/φ(x) : ⟨x, y⟩ > 1}`, with `0/0 = 0`, `positive/0 = +inf`
/// and an empty supremum equal to 0.
pub fn a_transform(phi: &GridFunction) -> Result<GridFunction> {
    a_transform_on(phi, phi.grid())
}

pub fn a_transform_on(phi: &GridFunction, out: &Grid) -> Result<GridFunction> {
    same_dim(phi, out)?;
    if phi.values().iter().any(|v| *v < 0.0) {
        return Err(Error::Precondition(
            "A-transform input must be nonnegative".into(),
        ));
    }
    match phi.origin_index() {
        Some(i) if phi.values()[i] == 0.0 => {}
        _ => {
            return Err(Error::Precondition(
                "A-transform input must vanish at a node at the origin".into(),
            ))
        }
    }
    check_convex(phi, 1e-9)?;
    let nodes: Vec<(Vec<f64>, f64)> = phi
        .nodes()
        .into_iter()
        .zip(phi.values().iter().copied())
        .collect();
    GridFunction::from_fn(out.clone(), |y| {
        let mut best: f64 = 0.0;
        for (x, v) in &nodes {
            let num = dot(x, y) - 1.0;
            if num > 0.0 {
                let term = if *v == 0.0 { f64::INFINITY } else { num / v };
                best = best.max(term);
            }
        }
        best
    })
}

/// Cost function on node pairs.
pub type Cost<'a> = &'a (dyn Fn(&[f64], &[f64]) -> f64 + Sync);

/// `ψ^c(x) = inf_y c(x, y) - ψ(y)` over the nodes of `psi`.
///
/// `c = +inf` or `ψ(y) = -inf` make a term `+inf`; otherwise `ψ(y) = +inf`
/// makes it `-inf`. The cost is checked for symmetry on a sample of node
/// pairs and must never return NaN or `-inf`.
pub fn c_transform(psi: &GridFunction, cost: Cost<'_>) -> Result<GridFunction> {
    c_transform_on(psi, cost, psi.grid())
}

pub fn c_transform_on(psi: &GridFunction, cost: Cost<'_>, out: &Grid) -> Result<GridFunction> {
    same_dim(psi, out)?;
    let nodes = psi.nodes();
    let stride = (nodes.len() / 40).max(1);
    for a in nodes.iter().step_by(stride) {
        for b in nodes.iter().step_by(stride) {
            let (ab, ba) = (cost(a, b), cost(b, a));
            if ab.is_nan() || ab == f64::NEG_INFINITY {
                return Err(Error::BadCost);
            }
            if ab != ba && (ab - ba).abs() > 1e-12 * (1.0 + ab.abs()) {
                return Err(Error::Precondition(format!(
                    "cost is not symmetric at {a:?}, {b:?}"
                )));
            }
        }
    }
    let vals = psi.values();
    let mut bad = false;
    let f = GridFunction::from_fn(out.clone(), |x| {
        let mut best = f64::INFINITY;
        for (y, &p) in nodes.iter().zip(vals) {
            let c = cost(x, y);
            if c.is_nan() || c == f64::NEG_INFINITY {
                bad = true;
                continue;
            }
            let term = if c == f64::INFINITY || p == f64::NEG_INFINITY {
                f64::INFINITY
            } else if p == f64::INFINITY {
                f64::NEG_INFINITY
            } else {
                c - p
            };
            best = best.min(term);
        }
        best
    });
    if bad {
        return Err(Error::BadCost);
    }
    f
}

/// Cost on `X × R` lifted from `c`: `((x, t), (y, s)) -> c(x, y) - s - t`.
/// Its set transform sends the hypograph of `ψ` to the hypograph of `ψ^c`.
pub struct LiftedCost<C> {
    pub cost: C,
}

impl<C: Fn(&[f64], &[f64]) -> f64> LiftedCost<C> {
    pub fn eval(&self, xt: &[f64], ys: &[f64]) -> f64 {
        let (t, x) = xt.split_last().expect("lifted points have a height");
        let (s, y) = ys.split_last().expect("lifted points have a height");
        (self.cost)(x, y) - s - t
    }
}

/// `{(y, s) : lifted((x, t), (y, s)) >= 0 for all (x, t) in hypo ψ}`,
/// evaluated on the graph points, which bind hardest.
pub fn hypograph_dual<C>(psi: &GridFunction, lifted: LiftedCost<C>) -> MembershipOracle
where
    C: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
{
    let tops: Vec<(Vec<f64>, f64)> = psi
        .nodes()
        .into_iter()
        .zip(psi.values().iter().copied())
        .collect();
    MembershipOracle::new(psi.dim() + 1, move |ys| {
        let mut worst = f64::INFINITY;
        for (x, p) in &tops {
            let v = match *p {
                f64::NEG_INFINITY => continue,
                f64::INFINITY => f64::NEG_INFINITY,
                p => {
                    let mut xt = x.clone();
                    xt.push(p);
                    lifted.eval(&xt, ys)
                }
            };
            worst = worst.min(v);
        }
        worst
    })
}

/// Result of testing the class `φ >= 1, φ(0) = 1, -1 <= Lφ <= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub min_value: f64,
    pub value_at_origin: f64,
    /// Extremes of `Lφ` over nodes where its supremum is attained inside the box.
    pub legendre_min: f64,
    pub legendre_max: f64,
    pub domain_nodes: usize,
    pub holds: bool,
}

pub fn dual_polar_class(phi: &GridFunction, tol: f64) -> Result<ClassReport> {
    let at0 = phi
        .origin_index()
        .map(|i| phi.values()[i])
        .unwrap_or(f64::NAN);
    let min_value = phi.values().iter().copied().fold(f64::INFINITY, f64::min);
    let (l, dom) = legendre_with_domain(phi)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut count = 0;
    for (v, d) in l.values().iter().zip(&dom) {
        if *d {
            lo = lo.min(*v);
            hi = hi.max(*v);
            count += 1;
        }
    }
    let holds = min_value >= 1.0 - tol
        && (at0 - 1.0).abs() <= tol
        && lo >= -1.0 - tol
        && hi <= tol
        && check_convex(phi, 1e-9).is_ok();
    Ok(ClassReport {
        min_value,
        value_at_origin: at0,
        legendre_min: lo,
        legendre_max: hi,
        domain_nodes: count,
        holds,
    })
}

/// `T̃φ(y) = sup {(1 - ⟨x, y⟩)/φ(x) : ⟨x, y⟩ <= 1}`, the profile of the
/// dual-polar image of the epigraph of `φ`.
pub fn dual_polar_functional(phi: &GridFunction) -> Result<GridFunction> {
    dual_polar_functional_on(phi, phi.grid())
}

pub fn dual_polar_functional_on(phi: &GridFunction, out: &Grid) -> Result<GridFunction> {
    same_dim(phi, out)?;
    let report = dual_polar_class(phi, 1e-9)?;
    if !report.holds {
        return Err(Error::Precondition(format!(
            "input is outside the class: min {}, at origin {}, Legendre range [{}, {}]",
            report.min_value, report.value_at_origin, report.legendre_min, report.legendre_max
        )));
    }
    let nodes = finite_nodes(phi);
    GridFunction::from_fn(out.clone(), |y| {
        nodes
            .iter()
            .filter_map(|(x, v)| {
                let s = dot(x, y);
                (s <= 1.0).then(|| (1.0 - s) / v)
            })
            .fold(0.0, f64::max)
    })
}

/// `T_R φ(y) = sup {(1 + ⟨x, y⟩)/φ(x) : 1 + ⟨x, y⟩ > 0}` for positive `φ`.
pub fn rotem_transform(phi: &GridFunction) -> Result<GridFunction> {
    rotem_transform_on(phi, phi.grid())
}

pub fn rotem_transform_on(phi: &GridFunction, out: &Grid) -> Result<GridFunction> {
    same_dim(phi, out)?;
    if phi.values().iter().any(|v| *v <= 0.0) {
        return Err(Error::Precondition("input must be positive".into()));
    }
    let nodes = finite_nodes(phi);
    GridFunction::from_fn(out.clone(), |y| {
        nodes
            .iter()
            .filter_map(|(x, v)| {
                let s = 1.0 + dot(x, y);
                (s > 0.0).then(|| s / v)
            })
            .fold(0.0, f64::max)
    })
}
