//! Test families, preserver runs and counterexample shrinking.

mod bisect;
mod family;
mod report;

pub use bisect::{threshold_by_bisection, Bisection};
pub use family::{gen_family, Family, FamilyParams, Instance, Target, MAX_DENOMINATOR};
pub use report::{
    check_instance, minimize_counterexample, run_preserver, Counterexample, Failure, FailureCause, PreserverReport,
    PreserverRun, Verdict,
};
