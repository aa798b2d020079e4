//! The point map `F(x, t) = (x/t, 1/t)` on the open upper half-space and
//! the set maps built from it.

use super::region::{MembershipOracle, Region};

/// Points at height below this are decided by the limit from above.
const FLOOR: f64 = 1e-12;

/// `F(x, t) = (x/t, 1/t)`; `None` unless `t > 0`. `F` is its own inverse.
pub fn j_point(z: &[f64]) -> Option<Vec<f64>> {
    let (&t, x) = z.split_last()?;
    if t > 0.0 {
        let mut out: Vec<f64> = x.iter().map(|v| v / t).collect();
        out.push(1.0 / t);
        Some(out)
    } else {
        None
    }
}

/// `J(K) = F(K ∩ {t > 0})`, as an oracle: `y ∈ J(K)` iff `y_n > 0` and `F(y) ∈ K`.
pub fn j_transform<R: Region + 'static>(k: R) -> MembershipOracle {
    let dim = k.dim();
    MembershipOracle::new(dim, move |y| match j_point(y) {
        Some(z) => k.slack(&z),
        None => f64::NEG_INFINITY,
    })
}

/// `J(K)` together with its mirror image in `{t = 0}`. Points with `t = 0`
/// belong when nearby points above do.
pub fn tilde_j<R: Region + 'static>(k: R) -> MembershipOracle {
    let dim = k.dim();
    MembershipOracle::new(dim, move |y| {
        let mut z = y.to_vec();
        let t = z.last_mut().expect("dimension at least 1");
        *t = t.abs().max(FLOOR);
        k.slack(&j_point(&z).expect("positive height"))
    })
}
