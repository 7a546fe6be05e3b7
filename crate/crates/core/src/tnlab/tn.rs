//! Total non-negativity: brute-force minor enumeration and the Hankel criterion.

use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::psd::exact_certificate;
use crate::exactmat::{combinations, det_exact, Matrix};
use crate::scalar::{rational_serde, Rational, Scalar};

pub const TN_BRUTEFORCE_MAX: usize = 8;
pub const TN_EQUIV_MAX: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TnWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "rational_serde")]
    pub minor: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TnReport {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<TnWitness>,
    pub minors_checked: usize,
}

/// Checks every square minor, smallest order first, stopping at the first negative one.
pub fn is_tn_bruteforce(a: &Matrix<Rational>) -> Result<TnReport> {
    if a.rows() > TN_BRUTEFORCE_MAX || a.cols() > TN_BRUTEFORCE_MAX {
        return Err(Error::Size(format!(
            "brute-force TN test is capped at {TN_BRUTEFORCE_MAX}x{TN_BRUTEFORCE_MAX}, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let mut checked = 0;
    for k in 1..=a.rows().min(a.cols()) {
        let col_sets = combinations(a.cols(), k);
        for rows in combinations(a.rows(), k) {
            for cols in &col_sets {
                checked += 1;
                let d = det_exact(&a.select(&rows, cols)?)?;
                if d.is_negative() {
                    return Ok(TnReport {
                        verdict: false,
                        witness: Some(TnWitness { rows, cols: cols.clone(), minor: d }),
                        minors_checked: checked,
                    });
                }
            }
        }
    }
    Ok(TnReport { verdict: true, witness: None, minors_checked: checked })
}

/// The square truncation used by the Hankel criterion: drop the first column
/// and last row, then pad with a zero row and column.
pub fn hankel_truncation(a: &Matrix<Rational>) -> Matrix<Rational> {
    let n = a.rows();
    Matrix::from_fn(n, n, |i, j| {
        if i + 1 < n && j + 1 < n {
            a[(i, j + 1)].clone()
        } else {
            Rational::zero()
        }
    })
}

/// A square Hankel matrix is TN iff it and its truncation are both PSD.
pub fn is_tn_hankel(a: &Matrix<Rational>) -> Result<bool> {
    a.ensure_square("Hankel TN test")?;
    if !a.is_hankel() {
        return Err(Error::Structure("Hankel TN criterion needs a Hankel matrix".into()));
    }
    Ok(exact_certificate(a)?.is_none() && exact_certificate(&hankel_truncation(a))?.is_none())
}

/// Runs both TN tests and insists they agree.
pub fn tn_equiv_check(a: &Matrix<Rational>) -> Result<bool> {
    if a.rows() > TN_EQUIV_MAX {
        return Err(Error::Size(format!("equivalence check is capped at N = {TN_EQUIV_MAX}")));
    }
    let brute = is_tn_bruteforce(a)?.verdict;
    let hankel = is_tn_hankel(a)?;
    if brute != hankel {
        return Err(Error::InvariantViolation(format!(
            "brute-force TN says {brute}, Hankel criterion says {hankel}"
        )));
    }
    Ok(brute)
}

/// Non-negativity of the contiguous 2×2 minors of a positive matrix, which
/// for positive matrices certifies every 2×2 minor.
pub fn pgambler_all_2x2<T: Scalar>(a: &Matrix<T>) -> Result<bool> {
    if let Some(((i, j), v)) = a.indexed().find(|(_, v)| **v <= T::zero()) {
        return Err(Error::Precondition(format!("entry ({i},{j}) = {v} is not positive")));
    }
    for i in 0..a.rows().saturating_sub(1) {
        for j in 0..a.cols().saturating_sub(1) {
            let m = a[(i, j)].clone() * a[(i + 1, j + 1)].clone()
                - a[(i, j + 1)].clone() * a[(i + 1, j)].clone();
            if m < T::zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
