//! Reading input files and resolving built-in bodies.

use std::path::{Path, PathBuf};

use orqi::finite::{CostRelation, GroundSet, SubsetMask};
use orqi::geometry::{
    polar, reuleaux_triangle, DirectionGrid, MembershipOracle, PointSet, ProfileBody, Region,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

pub fn one_input(inputs: &[PathBuf]) -> Result<&Path, CliError> {
    match inputs {
        [p] => Ok(p),
        [] => Err(CliError::Usage("an input file is required".into())),
        _ => Err(CliError::Usage("expected exactly one input file".into())),
    }
}

pub fn relation(path: &Path) -> Result<CostRelation, CliError> {
    read_json(path)
}

/// Parse a comma separated label list; the empty string is the empty set.
pub fn label_set(g: &GroundSet, spec: &str) -> Result<SubsetMask, CliError> {
    let labels: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(g.mask(&labels)?)
}

/// Points from CSV (one point per row, an optional non-numeric header) or
/// from `{"points": [[...], ...]}` JSON.
pub fn points(path: &Path) -> Result<PointSet, CliError> {
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if !is_csv {
        return read_json(path);
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parsed: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(r) => rows.push(r),
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(CliError::Schema(format!(
                    "{} row {}: {e}",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(PointSet::from_rows(&rows)?)
}

fn circle(r: f64, m: usize) -> PointSet {
    DirectionGrid::circle(m)
        .points()
        .map(|u| u.iter().map(|v| r * v).collect())
        .expect("finite")
}

/// Generating points of a named planar body.
pub fn named_points(name: &str, directions: usize) -> Result<PointSet, CliError> {
    Ok(match name {
        "square" => square_vertices(),
        "ball" => circle(1.0, directions),
        "reuleaux" => reuleaux_triangle(1.0, 600).0,
        "k0" => ProfileBody::k0().generators(),
        "k1" => ProfileBody::k1().generators(),
        _ => return Err(unknown_body(name, "square, ball, reuleaux, k0, k1")),
    })
}

fn square_vertices() -> PointSet {
    PointSet::from_rows(&[[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]).expect("finite")
}

fn cross_vertices() -> PointSet {
    PointSet::from_rows(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]).expect("finite")
}

fn unknown_body(name: &str, known: &str) -> CliError {
    CliError::Usage(format!(
        "unknown body {name:?}; built-in bodies are {known}"
    ))
}

/// Membership oracle of a named planar body.
pub fn named_region(name: &str) -> Result<Box<dyn Region>, CliError> {
    Ok(match name {
        "k0" => Box::new(ProfileBody::k0().region()),
        "k1" => Box::new(ProfileBody::k1().region()),
        "reuleaux" => Box::new(reuleaux_triangle(1.0, 600).1),
        "square" => Box::new(polar(&cross_vertices())?),
        "ball" => Box::new(MembershipOracle::new(2, |y| {
            1.0 - (y[0] * y[0] + y[1] * y[1]).sqrt()
        })),
        "halfspace" => Box::new(MembershipOracle::new(2, |y| y[1])),
        _ => {
            return Err(unknown_body(
                name,
                "k0, k1, reuleaux, square, ball, halfspace",
            ))
        }
    })
}

/// A body `L` with its polar, for the section condition.
pub type BodyPair = (Box<dyn Region>, Box<dyn Region>);

pub fn named_section_body(name: &str) -> Result<BodyPair, CliError> {
    Ok(match name {
        "ball" => (named_region("ball")?, named_region("ball")?),
        "square" => (
            Box::new(polar(&cross_vertices())?),
            Box::new(polar(&square_vertices())?),
        ),
        _ => return Err(unknown_body(name, "ball, square")),
    })
}

/// Number or one of the strings `"inf"`, `"-inf"`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum Num {
    F(f64),
    S(String),
}

impl Num {
    pub fn value(&self) -> Result<f64, CliError> {
        match self {
            Num::F(v) => Ok(*v),
            Num::S(s) if s == "inf" => Ok(f64::INFINITY),
            Num::S(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
            Num::S(s) => Err(CliError::Schema(format!("not a number: {s:?}"))),
        }
    }
}

pub fn numbers(v: &[Num]) -> Result<Vec<f64>, CliError> {
    v.iter().map(Num::value).collect()
}

/// Planar cone-like body given by its profile.
#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Symmetric { a: f64, beta: f64 },
    Random { seed: u64 },
    Profile { nodes: Vec<f64>, values: Vec<Num> },
}

impl BodySpec {
    pub fn build(self) -> Result<ProfileBody, CliError> {
        Ok(match self {
            BodySpec::Symmetric { a, beta } => ProfileBody::symmetric(a, beta)?,
            BodySpec::Random { seed } => ProfileBody::random(seed),
            BodySpec::Profile { nodes, values } => {
                ProfileBody::from_samples(nodes, numbers(&values)?)?
            }
        })
    }
}

/// `k0`, `k1` or a path to a body JSON file.
pub fn profile_body(name: &str) -> Result<ProfileBody, CliError> {
    match name {
        "k0" => Ok(ProfileBody::k0()),
        "k1" => Ok(ProfileBody::k1()),
        path => read_json::<BodySpec>(Path::new(path))?.build(),
    }
}
