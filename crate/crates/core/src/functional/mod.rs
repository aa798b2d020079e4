//! Transforms of functions sampled on grids: Legendre, the A-transform,
//! c-transforms for a general cost, and the profile forms of the dual-polar
//! and Rotem transforms.

pub mod catalog;
mod grid;
mod transforms;

pub use catalog::{simple_orqi_catalog, SimpleOrqi};
pub use grid::GridFunction;
pub use transforms::{
    a_transform, a_transform_on, c_transform, c_transform_on, check_convex, dual_polar_class,
    dual_polar_functional, dual_polar_functional_on, hypograph_dual, legendre, legendre_on,
    legendre_with_domain, rotem_transform, rotem_transform_on, ClassReport, Cost, LiftedCost,
};
