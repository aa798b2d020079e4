use thiserror::Error;

use crate::finite::{ComplementViolation, OrqiViolation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set needs between 1 and {max} labels, got {got}")]
    GroundSize { got: usize, max: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("label {0:?} cannot be used as a map key (contains ',')")]
    BadLabel(String),
    #[error("relation matrix must be {n}x{n}")]
    Shape { n: usize },
    #[error("relation is not symmetric at ({0}, {1})")]
    Asymmetric(String, String),
    #[error("operation limited to ground sets of size {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("operands live on different ground sets")]
    GroundMismatch,
    #[error("not an ORQI: {0}")]
    NotOrqi(OrqiViolation),
    #[error("not a complemented ORQI: {0}")]
    NotComplemented(ComplementViolation),
    #[error("{0:?} and {1:?} are not related, so the seed set is not a clique")]
    NotClique(String, String),
    #[error("invalid sub-family transform: {0}")]
    BadSubFamily(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("function is not convex near node {0}")]
    NotConvex(usize),
    #[error("cost function returned NaN or -inf")]
    BadCost,
    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
