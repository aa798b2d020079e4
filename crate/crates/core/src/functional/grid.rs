use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::Grid;

/// Function sampled on a regular grid, values in `[-inf, +inf]`. Node order
/// has the first axis varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct GridFunctionJson {
    #[serde(rename = "box")]
    bounds: Vec<[f64; 2]>,
    resolution: usize,
    values: Vec<JsonValue>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonValue {
    Num(f64),
    Word(String),
}

impl Serialize for GridFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GridFunctionJson {
            bounds: self
                .grid
                .lo
                .iter()
                .zip(&self.grid.hi)
                .map(|(a, b)| [*a, *b])
                .collect(),
            resolution: self.grid.per_axis,
            values: self
                .values
                .iter()
                .map(|&v| match v {
                    f64::INFINITY => JsonValue::Word("inf".into()),
                    f64::NEG_INFINITY => JsonValue::Word("-inf".into()),
                    v => JsonValue::Num(v),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = GridFunctionJson::deserialize(d)?;
        let values = j
            .values
            .into_iter()
            .map(|v| match v {
                JsonValue::Num(x) => Ok(x),
                JsonValue::Word(w) if w == "inf" => Ok(f64::INFINITY),
                JsonValue::Word(w) if w == "-inf" => Ok(f64::NEG_INFINITY),
                JsonValue::Word(w) => Err(D::Error::custom(format!("bad value {w:?}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let grid = Grid::new(
            j.bounds.iter().map(|b| b[0]).collect(),
            j.bounds.iter().map(|b| b[1]).collect(),
            j.resolution,
        );
        GridFunction::new(grid, values).map_err(D::Error::custom)
    }
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::NonFinite);
        }
        Ok(GridFunction { grid, values })
    }

    pub fn from_fn(grid: Grid, mut f: impl FnMut(&[f64]) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        grid.for_each(|x| values.push(f(x)));
        GridFunction::new(grid, values)
    }

    /// One-dimensional grid on `[lo, hi]`.
    pub fn line(lo: f64, hi: f64, n: usize, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        GridFunction::from_fn(Grid::new(vec![lo], vec![hi], n), |x| f(x[0]))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Node coordinates in storage order.
    pub fn nodes(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(self.len());
        self.grid.for_each(|x| out.push(x.to_vec()));
        out
    }

    /// Index of the node at the origin, if the grid has one.
    pub fn origin_index(&self) -> Option<usize> {
        let mut idx = 0;
        let mut stride = 1;
        for a in 0..self.dim() {
            let n = self.grid.per_axis;
            let i = (0..n).find(|&i| self.grid.coord(a, i).abs() < 1e-12)?;
            idx += i * stride;
            stride *= n;
        }
        Some(idx)
    }

    /// Nodes on the outer face of the grid box.
    pub fn on_box_boundary(&self, idx: usize) -> bool {
        let n = self.grid.per_axis;
        let mut rest = idx;
        for _ in 0..self.dim() {
            let i = rest % n;
            if i == 0 || i == n - 1 {
                return true;
            }
            rest /= n;
        }
        false
    }

    /// `x,value` rows for one-dimensional functions, `x_0,..,value` otherwise.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let d = self.dim();
        for k in 0..d {
            out.push_str(&format!("x{k},"));
        }
        out.push_str("value\n");
        for (x, v) in self.nodes().iter().zip(&self.values) {
            for c in x {
                out.push_str(&format!("{c},"));
            }
            out.push_str(&format!("{v}\n"));
        }
        out
    }
}
