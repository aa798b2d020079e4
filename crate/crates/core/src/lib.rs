//! Order reversing quasi involutions (ORQIs): transforms `T` with
//! `K ⊆ T(T(K))` that reverse inclusion, realised as c-duals of symmetric
//! cost relations.
//!
//! - [`finite`]: exact lattice computations on finite ground sets.
//! - [`geometry`]: polarity-type transforms on R^n, by sampling.
//! - [`functional`]: Legendre-type transforms of grid functions.
//! - [`measure`]: Gaussian Monte Carlo experiments.

pub mod error;
pub mod finite;
pub mod functional;
pub mod geometry;
pub mod measure;

pub use error::{Error, Result};
