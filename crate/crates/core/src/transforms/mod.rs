//! Entrywise transforms and the checks built on them.

mod facewise;
mod monotone;
mod structured;
mod threshold;
mod transform;

pub use facewise::{
    face_key, facewise_apply, facewise_decompose, facewise_extension_check, parse_face_key, subsets,
    FacewiseDecomposition, FacewiseMap, MultiPoly, Term,
};
pub use monotone::{
    abs_monotone_test, abs_monotone_test_tabulated, complete_monotone_test, forward_difference, DiffGrid,
    DIFF_TOL,
};
pub use structured::{boundary_matrix, checkerboard_signs, h_a, jump_apply_check, odd_composite_identity, udcc_matrix};
pub use threshold::{
    critical_value, hook_schur_ones, jain_certificate, jain_draws, jain_matrix, jain_psd, lprelim_solve, threshold_family,
    u_vector, ThresholdSide, TwoAtomSplit,
};
pub use transform::{TabPoint, Transform};
