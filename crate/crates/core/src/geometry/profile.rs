//! Planar cone-like bodies `{(x, t) : t >= φ(x)}` given by a profile `φ`
//! with values in `(0, inf]`, and the invariant sets of the dual-polar
//! transform among them.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::halfspace::HalfspaceSet;
use super::jmap::{j_point, tilde_j};
use super::region::{agreement, Agreement, Grid, MembershipOracle, PointSet};
use super::transforms::{dual_polar, polar};
use crate::error::{Error, Result};

type ProfileFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Epigraph of a profile, plus the profile nodes used as its generators.
#[derive(Clone)]
pub struct ProfileBody {
    profile: Arc<ProfileFn>,
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl fmt::Debug for ProfileBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProfileBody")
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

/// Uniform nodes on `[-8, 8]` with step 0.01, plus 60 geometric nodes on
/// each side out to `1e6` so the asymptotic directions are generated too.
pub fn default_nodes() -> Vec<f64> {
    let mut nodes: Vec<f64> = (0..=1600).map(|i| -8.0 + 0.01 * i as f64).collect();
    let (a, b, m) = (10f64.ln(), 1e6f64.ln(), 60);
    for i in 0..m {
        let r = (a + (b - a) * i as f64 / (m - 1) as f64).exp();
        nodes.push(r);
        nodes.push(-r);
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    nodes
}

impl ProfileBody {
    pub fn new(
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
        nodes: Vec<f64>,
    ) -> Result<Self> {
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let values: Vec<f64> = nodes.iter().map(|&x| profile(x)).collect();
        if values.iter().any(|v| v.is_nan() || *v <= 0.0) {
            return Err(Error::Precondition(
                "profile values must lie in (0, inf]".into(),
            ));
        }
        if values.iter().all(|v| v.is_infinite()) {
            return Err(Error::Empty("profile is +inf on every node"));
        }
        Ok(ProfileBody {
            profile: Arc::new(profile),
            nodes,
            values,
        })
    }

    /// Profile linear between sampled nodes and `+inf` outside them or
    /// next to an infinite sample. Nodes must be strictly increasing.
    pub fn from_samples(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::Dimension {
                expected: nodes.len(),
                got: values.len(),
            });
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(
                "nodes must be strictly increasing".into(),
            ));
        }
        let (xs, vs) = (nodes.clone(), values);
        ProfileBody::new(
            move |x| {
                let i = xs.partition_point(|n| *n <= x);
                if i == 0 {
                    return f64::INFINITY;
                }
                if xs[i - 1] == x {
                    return vs[i - 1];
                }
                if i == xs.len() {
                    return f64::INFINITY;
                }
                let (a, b) = (vs[i - 1], vs[i]);
                if a.is_infinite() || b.is_infinite() {
                    return f64::INFINITY;
                }
                let w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
                (1.0 - w) * a + w * b
            },
            nodes,
        )
    }

    /// `t >= sqrt(x² + 1)`.
    pub fn k0() -> Self {
        ProfileBody::new(|x| (x * x + 1.0).sqrt(), default_nodes()).expect("valid profile")
    }

    /// `x >= 0, t >= 1`.
    pub fn k1() -> Self {
        ProfileBody::new(
            |x| if x >= 0.0 { 1.0 } else { f64::INFINITY },
            default_nodes(),
        )
        .expect("valid profile")
    }

    /// `t >= x + 1` on `x >= 0`, `t >= 1` on `[-1, 0]`, `t >= -x` on `x <= -1`.
    pub fn k2() -> Self {
        ProfileBody::new(
            |x| {
                if x >= 0.0 {
                    x + 1.0
                } else if x >= -1.0 {
                    1.0
                } else {
                    -x
                }
            },
            default_nodes(),
        )
        .expect("valid profile")
    }

    /// `sqrt(1 + a x²) + β|x|`: even and cone-like, equal to `K₀` at `a = 1, β = 0`.
    pub fn symmetric(a: f64, beta: f64) -> Result<Self> {
        if !(a > 0.0 && beta >= 0.0) {
            return Err(Error::Precondition("need a > 0 and beta >= 0".into()));
        }
        ProfileBody::new(
            move |x| (1.0 + a * x * x).sqrt() + beta * x.abs(),
            default_nodes(),
        )
    }

    /// Random cone-like body with closest point `(0, 1)`:
    /// `max(sqrt(1 + a x²), 1 + b x, 1 - c x)`.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let a = rng.random_range(0.2..3.0);
        let b = rng.random_range(0.0..2.0);
        let c = rng.random_range(0.0..2.0);
        ProfileBody::new(
            move |x: f64| (1.0 + a * x * x).sqrt().max(1.0 + b * x).max(1.0 - c * x),
            default_nodes(),
        )
        .expect("valid profile")
    }

    pub fn phi(&self, x: f64) -> f64 {
        (self.profile)(x)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node_values(&self) -> &[f64] {
        &self.values
    }

    pub fn region(&self) -> MembershipOracle {
        let p = self.profile.clone();
        MembershipOracle::new(2, move |y| {
            let v = p(y[0]);
            if v.is_infinite() {
                f64::NEG_INFINITY
            } else {
                y[1] - v
            }
        })
    }

    /// Graph points `(x, φ(x))` over the finite nodes.
    pub fn generators(&self) -> PointSet {
        let mut out = PointSet::new(2);
        for (&x, &v) in self.nodes.iter().zip(&self.values) {
            if v.is_finite() {
                out.push(&[x, v]).expect("finite");
            }
        }
        out
    }

    /// Dual-polar image of the generators.
    pub fn dual(&self) -> HalfspaceSet {
        dual_polar(&self.generators()).expect("nonempty generators")
    }

    /// Profile of the dual-polar image at `y`: `max (1 - x y)/φ(x)` over nodes.
    pub fn dual_profile_at(&self, y: f64) -> f64 {
        dual_profile(&self.nodes, &self.values, y)
    }

    /// The dual-polar image as a profile body on the same nodes.
    pub fn dual_body(&self) -> ProfileBody {
        let (nodes, values) = (self.nodes.clone(), self.values.clone());
        ProfileBody::new(
            move |y| dual_profile(&nodes, &values, y),
            self.nodes.clone(),
        )
        .expect("dual profile is at least 1/φ(0) > 0")
    }
}

fn dual_profile(nodes: &[f64], values: &[f64], y: f64) -> f64 {
    nodes
        .iter()
        .zip(values)
        .filter(|(_, v)| v.is_finite())
        .map(|(x, v)| (1.0 - x * y) / v)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Build the invariant set attached to `K ⊆ {x >= 0, t >= 0}` with closest
/// point `(0, 1)`: the dual of `K` on `x < 0` glued to the double dual of
/// `K` on `x >= 0`.
pub fn construct_invariant(k: &ProfileBody) -> Result<ProfileBody> {
    for (&x, &v) in k.nodes.iter().zip(&k.values) {
        if x < 0.0 && v.is_finite() {
            return Err(Error::Precondition(format!("profile is finite at {x} < 0")));
        }
        if x * x + v * v < 1.0 - 1e-12 {
            return Err(Error::Precondition(format!(
                "node ({x}, {v}) is closer to the origin than (0, 1)"
            )));
        }
    }
    if (k.phi(0.0) - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition("profile must equal 1 at 0".into()));
    }
    let dual_vals: Vec<f64> = k.nodes.iter().map(|&y| k.dual_profile_at(y)).collect();
    let (nodes, values) = (k.nodes.clone(), k.values.clone());
    let outer = k.nodes.clone();
    ProfileBody::new(
        move |x| {
            if x < 0.0 {
                dual_profile(&nodes, &values, x)
            } else {
                dual_profile(&outer, &dual_vals, x)
            }
        },
        k.nodes.clone(),
    )
}

/// Agreement of a body with the dual-polar image of its generators.
pub fn self_duality(body: &ProfileBody, grid: &Grid) -> Agreement {
    let dual = body.dual();
    agreement(&body.region(), &dual, grid, 1e-9 * grid.scale())
}

/// Agreement between `-(J̃K)°` and `J̃(TK)` for a profile body. The left side
/// is the polar of the mapped graph points and their mirror images, negated;
/// the right side maps the dual-polar image back.
pub fn tilde_j_polar_agreement(body: &ProfileBody, grid: &Grid) -> Agreement {
    let mut gens = PointSet::new(2);
    for b in body.generators().iter() {
        let f = j_point(b).expect("graph points lie above the axis");
        gens.push(&f).expect("finite");
        gens.push(&[f[0], -f[1]]).expect("finite");
    }
    let lhs = polar(&gens).expect("nonempty generators").negated();
    let rhs = tilde_j(body.dual());
    agreement(&lhs, &rhs, grid, 1e-9 * grid.scale())
}
