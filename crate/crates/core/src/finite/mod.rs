//! Finite ground sets, symmetric relations and their c-duals.

pub mod algebra;
pub mod ground;
pub mod invariants;
pub mod relation;
pub mod table;

pub use algebra::{
    check_complemented, complement_conjugate, conjugate_on_image, dual_orqi, extend_from_subclass,
    hull_extension, intersect_orqis, respects_inclusions, restrict, restricted_dual, sandwich,
    subclass_structure, ComplementViolation, Extension, InclusionVerdict, InclusionWitness,
    SandwichPattern, SubclassReport,
};
pub use ground::{sort_family, submasks, GroundSet, SubsetMask, MAX_GROUND};
pub use invariants::{
    classify, enumerate_invariant_sets, maximal_almost_invariant, x_zero, Classification,
    InvariantKind, MAX_ENUMERATION,
};
pub use relation::{induced_relation, CostRelation};
pub use table::{
    is_orqi, lattice_law_exhaustive, OrqiVerdict, OrqiViolation, SubFamilyTransform,
    TransformTable, MAX_EXHAUSTIVE_LAW, MAX_TABLE,
};
