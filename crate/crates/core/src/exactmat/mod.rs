//! Dense linear algebra over exact rationals and doubles.

pub mod det;
pub mod eigen;
pub mod json;
mod matrix;
pub mod poly;
pub mod psd;

pub use det::{adjugate, det_exact, det_float, hadamard, hadamard_pow, minor, minor_float};
pub use eigen::{jacobi_eigen, SymmetricEigen};
pub use json::AnyMatrix;
pub use matrix::Matrix;
pub use poly::{det_series, entrywise_poly, UniPoly};
pub use psd::{combinations, is_psd, min_eigenvalue, PsdCertificate};

use crate::error::Result;
use crate::scalar::{Mode, Rational};

/// PSD verdict for a JSON-level matrix in the requested mode.
/// Exact mode needs rational entries; float mode accepts either.
pub fn is_psd_in_mode(a: &AnyMatrix, mode: Mode, tol: f64) -> Result<bool> {
    Ok(psd_certificate_in_mode(a, mode, tol)?.is_none())
}

pub fn psd_certificate_in_mode(
    a: &AnyMatrix,
    mode: Mode,
    tol: f64,
) -> Result<Option<PsdCertificate>> {
    match mode {
        Mode::Exact => psd::exact_certificate(a.as_rational()?),
        Mode::Float => psd::float_certificate(&a.to_f64(), tol),
    }
}

pub type QMatrix = Matrix<Rational>;
pub type FMatrix = Matrix<f64>;
