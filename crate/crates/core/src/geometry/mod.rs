//! Convex-geometric transforms on R^n, represented by sampled generator
//! sets, halfspace systems and membership oracles.

mod halfspace;
mod jmap;
mod profile;
mod region;
mod star;
mod transforms;

pub use halfspace::{
    closest_point, subclass_of, ClassMembership, Degenerate, Halfspace, HalfspaceSet, Sense,
};
pub use jmap::{j_point, j_transform, tilde_j};
pub use profile::{
    construct_invariant, default_nodes, self_duality, tilde_j_polar_agreement, ProfileBody,
};
pub use region::{
    agreement, dist, dot, norm, sample_members, Agreement, BoundingBox, DirectionGrid, Grid,
    MembershipOracle, PointSet, Region,
};
pub use star::{star_dual, RadialFunction};
pub use transforms::{
    ball_intersection, cone_like_check, convex_hull_2d, dual_polar, flower_dual,
    neighborhood_complement, polar, polygon_region, reciprocal, reciprocal_type, reuleaux_triangle,
    subclass_of_region, unconditional_dual, ConeLikeVerdict, Metric,
};
