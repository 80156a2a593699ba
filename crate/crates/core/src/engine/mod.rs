//! Frame-theoretic computations on a [`GFusionFrame`](crate::GFusionFrame).

mod bounds;
mod deletion;
mod dual;
mod operators;
mod transform;

pub use bounds::{
    frame_bounds, gf_complete, gf_rank, injectivity_check, range_space_bounds, Injectivity,
    SequenceBounds,
};
pub use deletion::{delete_member, DeletionReport, EIGENVALUE_ONE_TOL};
pub use dual::{
    canonical_dual, checked_condition, minimal_norm_coefficients, mixed_reconstruct, parsevalize,
    reconstruct, DualFrame, Reconstruction, CONDITION_LIMIT,
};
pub use operators::{analysis, analysis_matrix, frame_operator, synthesis, synthesis_matrix};
pub use transform::{
    bessel_finite_subset_check, pair_duality_check, transform_frame, PairDuality,
    TransformDiagnostics,
};
