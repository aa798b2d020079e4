//! Monte Carlo Gaussian measure of regions and the Blaschke-Santaló type
//! experiments for the dual-polar transform.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::j_point;
use crate::geometry::ProfileBody;
use crate::geometry::{dot, norm, subclass_of_region, DirectionGrid, Region};

/// Samples drawn from one generator stream. Fixed, so estimates do not
/// depend on how blocks are scheduled.
pub const BLOCK: usize = 1 << 14;
pub const MIN_SAMPLES: usize = 10_000;
/// Recorded in reports so runs can be reproduced elsewhere.
pub const RNG_NAME: &str =
    "rand_chacha ChaCha20, stream = block index; rand_distr StandardNormal (ziggurat)";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl McEstimate {
    fn from_hits(hits: usize, n: usize, seed: u64) -> Self {
        let p = hits as f64 / n as f64;
        McEstimate {
            mean: p,
            stderr: (p * (1.0 - p) / n as f64).sqrt(),
            n_samples: n,
            seed,
        }
    }
}

/// SplitMix64 step, used to derive independent sub-seeds.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed.wrapping_add(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Call `f` on `samples` standard normal vectors in R^dim.
pub fn for_each_normal(dim: usize, samples: usize, seed: u64, mut f: impl FnMut(&[f64])) {
    let mut y = vec![0.0; dim];
    let mut left = samples;
    let mut block = 0u64;
    while left > 0 {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(block);
        for _ in 0..left.min(BLOCK) {
            for v in y.iter_mut() {
                *v = StandardNormal.sample(&mut rng);
            }
            f(&y);
        }
        left -= left.min(BLOCK);
        block += 1;
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: samples,
            min: MIN_SAMPLES,
        });
    }
    Ok(())
}

/// Standard Gaussian measure of `k`.
pub fn gaussian_measure(k: &dyn Region, samples: usize, seed: u64) -> Result<McEstimate> {
    check_samples(samples)?;
    let mut hits = 0;
    for_each_normal(k.dim(), samples, seed, |y| {
        if k.contains(y) {
            hits += 1;
        }
    });
    Ok(McEstimate::from_hits(hits, samples, seed))
}

/// Measure on the upper half-space that `F(x, t) = (x/t, 1/t)` pushes the
/// Gaussian measure onto: `ν(L) = γ(F(L))`.
pub fn nu_measure(l: &dyn Region, samples: usize, seed: u64) -> Result<McEstimate> {
    gaussian_measure(&PullBack(l), samples, seed)
}

/// `{y : F(y) ∈ L}`.
struct PullBack<'a>(&'a dyn Region);

impl Region for PullBack<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn slack(&self, y: &[f64]) -> f64 {
        j_point(y).map_or(f64::NEG_INFINITY, |z| self.0.slack(&z))
    }

    fn contains(&self, y: &[f64]) -> bool {
        j_point(y).is_some_and(|z| self.0.contains(&z))
    }
}

/// Density of `ν` at `(x, z)`, `z > 0`:
/// `(2π)^{-n/2} exp(-|x|²/2z²) exp(-1/2z²) z^{-(n+1)}`.
pub fn nu_density(x: &[f64], z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    let n = x.len() + 1;
    let e = -(dot(x, x) + 1.0) / (2.0 * z * z);
    (2.0 * PI).powf(-(n as f64) / 2.0) * e.exp() * z.powi(-(n as i32 + 1))
}

/// Fraction of Gaussian-sampled members of `k` whose mirror image in the
/// line through `u` is also a member. `k` must have its closest point to
/// the origin in direction `u`.
pub fn essential_symmetry_check(
    k: &dyn Region,
    u: &[f64],
    samples: usize,
    seed: u64,
) -> Result<f64> {
    check_samples(samples)?;
    let n = k.dim();
    if u.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: u.len(),
        });
    }
    let r = norm(u);
    let u: Vec<f64> = u.iter().map(|v| v / r).collect();
    let class = subclass_of_region(k, &DirectionGrid::default_for(n)?, 1e3)?;
    match class.direction() {
        Some(d) if d.iter().zip(&u).all(|(a, b)| (a - b).abs() < 1e-6) => {}
        _ => {
            return Err(Error::Precondition(format!(
                "closest point is not in direction {u:?}: {class:?}"
            )))
        }
    }
    let (mut members, mut mirrored) = (0usize, 0usize);
    let mut m = vec![0.0; n];
    for_each_normal(n, samples, seed, |y| {
        if k.contains(y) {
            members += 1;
            let s = 2.0 * dot(y, &u);
            for ((a, b), c) in m.iter_mut().zip(y).zip(&u) {
                *a = s * c - b;
            }
            if k.contains(&m) {
                mirrored += 1;
            }
        }
    });
    if members == 0 {
        return Err(Error::Precondition(
            "no sampled point fell in the region".into(),
        ));
    }
    Ok(mirrored as f64 / members as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BsReport {
    #[serde(rename = "gamma_K")]
    pub gamma_k: f64,
    #[serde(rename = "gamma_TK")]
    pub gamma_tk: f64,
    pub product: f64,
    #[serde(rename = "gamma_K0_sq")]
    pub gamma_k0_sq: f64,
    /// `(product - gamma_K0_sq) / σ` with σ combining all three estimates.
    pub margin_sigma: f64,
    pub sigma: f64,
    pub holds: bool,
    pub seed: u64,
    pub samples: usize,
    pub rng: String,
}

/// Largest asymmetry tolerated before the experiment refuses to run.
pub const SYMMETRY_BAND: f64 = 1e-3;

/// Compare `γ(K) γ(T K)` with `γ(K₀)²` for a planar body, `T` the
/// dual-polar transform. Holds when the product is at most `γ(K₀)² + 3σ`.
pub fn bs_experiment(k: &ProfileBody, samples: usize, seed: u64) -> Result<BsReport> {
    check_samples(samples)?;
    let region = k.region();
    let sym = essential_symmetry_check(
        &region,
        &[0.0, 1.0],
        samples.min(100_000),
        derive_seed(seed, 3),
    )?;
    if sym < 1.0 - SYMMETRY_BAND {
        return Err(Error::Precondition(format!(
            "body is not essentially symmetric (fraction {sym})"
        )));
    }
    let gk = gaussian_measure(&region, samples, derive_seed(seed, 0))?;
    let gtk = gaussian_measure(&k.dual(), samples, derive_seed(seed, 1))?;
    let k0 = ProfileBody::k0().region();
    let g0 = gaussian_measure(&k0, samples, derive_seed(seed, 2))?;
    let product = gk.mean * gtk.mean;
    let reference = g0.mean * g0.mean;
    let var = (gtk.mean * gk.stderr).powi(2)
        + (gk.mean * gtk.stderr).powi(2)
        + (2.0 * g0.mean * g0.stderr).powi(2);
    let sigma = var.sqrt();
    let margin_sigma = if sigma > 0.0 {
        (product - reference) / sigma
    } else {
        0.0
    };
    Ok(BsReport {
        gamma_k: gk.mean,
        gamma_tk: gtk.mean,
        product,
        gamma_k0_sq: reference,
        margin_sigma,
        sigma,
        holds: product <= reference + 3.0 * sigma,
        seed,
        samples,
        rng: RNG_NAME.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrekopaPair {
    pub s: f64,
    pub t: f64,
    /// `f(s) g(t)`.
    pub lhs: f64,
    /// `h(√(st))²`.
    pub rhs: f64,
    pub margin_sigma: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrekopaReport {
    pub pairs: Vec<PrekopaPair>,
    pub holds: bool,
    pub seed: u64,
    pub samples: usize,
}

/// Weighted section measures `e^{-1/2s²} s^{-2} γ_{n-1}(A)` and their errors.
fn weighted(count: usize, samples: usize, s: f64) -> (f64, f64) {
    let w = (-0.5 / (s * s)).exp() / (s * s);
    let p = count as f64 / samples as f64;
    (w * p, w * (p * (1.0 - p) / samples as f64).sqrt())
}

/// Check `f(s) g(t) <= h(√(st))²` on a grid of heights in `(0, 1]`, where
/// `f`, `g` weigh the sections of `l` and of its polar at height `s`, `t`,
/// and `h` weighs the centred ball of radius `√(1 - r²)/r`. All section
/// measures share one stream of `(n-1)`-dimensional normal samples.
pub fn prekopa_condition_check(
    l: &dyn Region,
    l_polar: &dyn Region,
    heights: &[f64],
    samples: usize,
    seed: u64,
) -> Result<PrekopaReport> {
    check_samples(samples)?;
    let n = l.dim();
    if l_polar.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            got: l_polar.dim(),
        });
    }
    if n < 2 {
        return Err(Error::Precondition("need dimension at least 2".into()));
    }
    if heights.iter().any(|h| !(*h > 0.0 && *h <= 1.0)) {
        return Err(Error::Precondition("heights must lie in (0, 1]".into()));
    }
    let mut radii: Vec<f64> = Vec::new();
    for &s in heights {
        for &t in heights {
            radii.push((s * t).sqrt());
        }
    }
    let m = heights.len();
    let mut f_hits = vec![0usize; m];
    let mut g_hits = vec![0usize; m];
    let mut h_hits = vec![0usize; radii.len()];
    let mut z = vec![0.0; n];
    for_each_normal(n - 1, samples, seed, |x| {
        let r = norm(x);
        for (i, &s) in heights.iter().enumerate() {
            for (a, b) in z.iter_mut().zip(x) {
                *a = s * b;
            }
            z[n - 1] = s;
            if l.contains(&z) {
                f_hits[i] += 1;
            }
            if l_polar.contains(&z) {
                g_hits[i] += 1;
            }
        }
        for (i, &q) in radii.iter().enumerate() {
            if r <= ((1.0 - q * q) / (q * q)).sqrt() {
                h_hits[i] += 1;
            }
        }
    });
    let mut pairs = Vec::with_capacity(radii.len());
    for (i, &s) in heights.iter().enumerate() {
        for (j, &t) in heights.iter().enumerate() {
            let k = i * m + j;
            let (f, sf) = weighted(f_hits[i], samples, s);
            let (g, sg) = weighted(g_hits[j], samples, t);
            let (h, sh) = weighted(h_hits[k], samples, radii[k]);
            let (lhs, rhs) = (f * g, h * h);
            let sigma = ((g * sf).powi(2) + (f * sg).powi(2) + (2.0 * h * sh).powi(2)).sqrt();
            let margin_sigma = if sigma > 0.0 {
                (lhs - rhs) / sigma
            } else {
                0.0
            };
            pairs.push(PrekopaPair {
                s,
                t,
                lhs,
                rhs,
                margin_sigma,
                holds: lhs <= rhs + 3.0 * sigma,
            });
        }
    }
    let holds = pairs.iter().all(|p| p.holds);
    Ok(PrekopaReport {
        pairs,
        holds,
        seed,
        samples,
    })
}
