//! Measures, truncated moment sequences and their Hankel matrices.

mod measure;
mod multi;
mod seq;
mod structure;

pub use measure::{Atom, Measure};
pub use multi::{
    check_multi_psd, multi_indices, multi_moments_of, multi_psd_failure, KernelFailure,
    MultiMomentFamily,
};
pub use seq::{
    check_support, hankel_from, localizer_matrix, moments_of, passes_truncated_criteria, shift, support_failure,
    MomentSeq, SupportFailure, SupportSet,
};
pub use structure::{is_checkerboard, is_rank_one_hankel};
