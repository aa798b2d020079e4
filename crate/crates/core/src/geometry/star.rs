//! Star-shaped sets through their gauge on a direction grid.

use super::region::{dot, norm, DirectionGrid, Region};
use crate::error::{Error, Result};

/// Gauge values `g(u) ∈ [0, inf]` on a direction grid. The set is
/// `{y : |y| g(y/|y|) <= 1}`, with `y/|y|` snapped to the nearest grid direction.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialFunction {
    directions: DirectionGrid,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn new(directions: DirectionGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != directions.len() {
            return Err(Error::Dimension {
                expected: directions.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::Precondition(
                "gauge values must lie in [0, inf]".into(),
            ));
        }
        Ok(RadialFunction { directions, values })
    }

    pub fn directions(&self) -> &DirectionGrid {
        &self.directions
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nearest(&self, y: &[f64]) -> usize {
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, u) in self.directions.iter().enumerate() {
            let c = dot(u, y);
            if c > best.0 {
                best = (c, i);
            }
        }
        best.1
    }

    /// Gauge of `y`, `|y| g(u)` with `0 · inf = 0`.
    pub fn gauge(&self, y: &[f64]) -> f64 {
        let r = norm(y);
        if r == 0.0 {
            return 0.0;
        }
        r * self.values[self.nearest(y)]
    }
}

impl Region for RadialFunction {
    fn dim(&self) -> usize {
        self.directions.dim()
    }

    fn slack(&self, y: &[f64]) -> f64 {
        1.0 - self.gauge(y)
    }
}

/// Pointwise reciprocal of the gauge, `1/0 = inf` and `1/inf = 0`.
pub fn star_dual(g: &RadialFunction) -> RadialFunction {
    let values = g
        .values
        .iter()
        .map(|&v| if v == 0.0 { f64::INFINITY } else { 1.0 / v })
        .collect();
    RadialFunction {
        directions: g.directions.clone(),
        values,
    }
}
