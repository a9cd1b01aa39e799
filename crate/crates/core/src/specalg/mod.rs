//! Banded matrices over an exact field, the Wilson rational algebra and
//! its meta q-Racah limit.
//!
//! Relations are checked as exact residual matrices. Over finite
//! truncations only an interior block is trusted; in closure mode the
//! truncation is exact and the whole matrix must vanish.

mod band;
mod build;
mod constants;
mod limit;
mod relations;

pub use band::{first_nonzero_on_interior, is_zero_on_interior, BandMatrix};
pub use build::{
    build, build_triplet, BuildOptions, MatrixKind, Orientation, RhoVariant, Side, Triplet, TripletSpec, VVariant,
};
pub use constants::{
    meta_constants, q_number, wilson_constants, E10Variant, MetaConstants, WilsonConstants, META_CONSTANT_NAMES,
    WILSON_CONSTANT_NAMES,
};
pub use limit::{
    gevp_matrix_residual, interior_degree, leading_matrix, limit_curve, meta_check, meta_checks, meta_generators,
    scaling_profile, vanishing_profile, MetaCheck, MetaGenerators, MetaSpec, ScalingProfile, VanishingEntry,
    VanishingProfile, CLAIMED_VANISHING,
};
pub use relations::{anticomm, q_comm, relation_residual, wilson_lhs, wilson_rhs, Constants, Relation, Word};
