//! Positive-semidefiniteness tests with failure certificates.
//!
//! Exact mode enumerates every principal minor (capped at 10×10). Float mode
//! compares the smallest Jacobi eigenvalue against `-tol·max(1, ‖A‖∞)`.

use num::traits::Signed;
use serde::{Deserialize, Serialize};

use super::det::det_exact;
use super::eigen::{jacobi_eigen, rayleigh_quotient};
use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{rational_serde, Rational, Scalar};

pub const EXACT_PSD_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsdCertificate {
    NegativeMinor {
        indices: Vec<usize>,
        #[serde(with = "rational_serde")]
        value: Rational,
    },
    NegativeEigenvalue { value: f64, vector: Vec<f64> },
}

impl PsdCertificate {
    /// Recomputes the certificate against `a`: the principal minor on
    /// `indices` by a fresh determinant, or the Rayleigh quotient of `vector`.
    pub fn reverify<T: Scalar>(&self, a: &Matrix<T>, tol: f64) -> bool {
        match self {
            PsdCertificate::NegativeMinor { indices, value } => {
                let Ok(qa) = a.try_map(|v| v.as_rational().ok_or(Error::Domain(String::new())))
                else {
                    return false;
                };
                qa.select(indices, indices)
                    .and_then(|s| det_exact(&s))
                    .map(|d| d == *value && d.is_negative())
                    .unwrap_or(false)
            }
            PsdCertificate::NegativeEigenvalue { vector, .. } => {
                let fa = a.to_f64();
                let bound = tol * fa.norm_inf().max(1.0);
                vector.len() == fa.rows() && rayleigh_quotient(&fa, vector) < -bound
            }
        }
    }
}

fn symmetric_exact(a: &Matrix<Rational>) -> bool {
    (0..a.rows()).all(|i| (0..i).all(|j| a[(i, j)] == a[(j, i)]))
}

/// Exact PSD test by principal-minor enumeration, smallest orders first.
pub fn exact_certificate(a: &Matrix<Rational>) -> Result<Option<PsdCertificate>> {
    a.ensure_square("PSD test")?;
    let n = a.rows();
    if n > EXACT_PSD_MAX_N {
        return Err(Error::Size(format!(
            "exact PSD test enumerates principal minors; {n}x{n} exceeds the {EXACT_PSD_MAX_N}x{EXACT_PSD_MAX_N} cap"
        )));
    }
    if !symmetric_exact(a) {
        return Err(Error::Structure("PSD test needs a symmetric matrix".into()));
    }
    for size in 1..=n {
        for idx in combinations(n, size) {
            let d = det_exact(&a.select(&idx, &idx)?)?;
            if d.is_negative() {
                return Ok(Some(PsdCertificate::NegativeMinor { indices: idx, value: d }));
            }
        }
    }
    Ok(None)
}

/// Floating PSD test via the smallest eigenvalue of the symmetrized matrix.
pub fn float_certificate(a: &Matrix<f64>, tol: f64) -> Result<Option<PsdCertificate>> {
    a.ensure_square("PSD test")?;
    let bound = tol * a.norm_inf().max(1.0);
    let n = a.rows();
    for i in 0..n {
        for j in 0..i {
            if (a[(i, j)] - a[(j, i)]).abs() > bound {
                return Err(Error::Structure(format!(
                    "asymmetric beyond tolerance at ({i},{j})"
                )));
            }
        }
    }
    if a.entries().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite matrix entry".into()));
    }
    let eig = jacobi_eigen(a);
    Ok(match eig.min() {
        Some((lam, x)) if lam < -bound => {
            Some(PsdCertificate::NegativeEigenvalue { value: lam, vector: x.to_vec() })
        }
        _ => None,
    })
}

/// PSD verdict in the mode fixed by the scalar type.
pub fn is_psd<T: Scalar>(a: &Matrix<T>, tol: f64) -> Result<bool> {
    Ok(T::psd_certificate(a, tol)?.is_none())
}

/// Smallest eigenvalue of the symmetrized matrix (float).
pub fn min_eigenvalue(a: &Matrix<f64>) -> Result<f64> {
    a.ensure_square("eigenvalues")?;
    Ok(jacobi_eigen(a).values.first().copied().unwrap_or(0.0))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
