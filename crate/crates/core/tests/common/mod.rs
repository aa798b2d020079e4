#![allow(dead_code)]

use orqi::geometry::*;

pub fn disk(r: f64) -> MembershipOracle {
    MembershipOracle::new(2, move |y| r - norm(y))
}

/// `ν(L)` for a planar `L ⊆ [-w, w] × (0, 1]` by uniform sampling of the
/// box weighted with the density. Returns mean and standard error.
pub fn nu_by_density(l: &dyn Region, w: f64, samples: usize, seed: u64) -> (f64, f64) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
    let area = 2.0 * w;
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..samples {
        let x = rng.random_range(-w..w);
        let z = 1.0 - rng.random::<f64>();
        let v = if l.contains(&[x, z]) {
            area * orqi::measure::nu_density(&[x], z)
        } else {
            0.0
        };
        s1 += v;
        s2 += v * v;
    }
    let n = samples as f64;
    let mean = s1 / n;
    (mean, ((s2 / n - mean * mean) / n).sqrt())
}

/// `γ₂(K₀) = ∫ φ(x) P(N > √(1 + x²)) dx` by Simpson's rule.
pub fn gamma_k0_quadrature() -> f64 {
    use statrs::function::erf::erfc;
    let (a, b, m) = (-12.0, 12.0, 24_000);
    let h = (b - a) / m as f64;
    let f = |x: f64| {
        let dens = (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        dens * 0.5 * erfc((1.0 + x * x).sqrt() / std::f64::consts::SQRT_2)
    };
    let mut s = f(a) + f(b);
    for i in 1..m {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}
