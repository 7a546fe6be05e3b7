//! Total non-negativity tests and the Hadamard-power obstruction for `A(x) = 1 + xM`.

mod fjs;
mod tn;

pub use fjs::{
    a_of_x, appendix_table, default_delta_grid, find_negative_power_det, fine_delta_grid, fjs_m,
    linear_term_prediction, power_det, quartic_coeff_identity, quartic_samples, NEGATIVE_DET_THRESHOLD,
    QUARTIC_CONSTANT,
};
pub use tn::{
    hankel_truncation, is_tn_bruteforce, is_tn_hankel, pgambler_all_2x2, tn_equiv_check,
    TnReport, TnWitness, TN_BRUTEFORCE_MAX, TN_EQUIV_MAX,
};
