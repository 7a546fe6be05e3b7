//! Sign and rank-one structure of Hankel matrices.

use crate::exactmat::Matrix;
use crate::scalar::Scalar;

/// Whether `u·uᵀ` is Hankel: either the entries form a geometric progression
/// or every entry except the last vanishes.
pub fn is_rank_one_hankel<T: Scalar>(u: &[T]) -> bool {
    let Some((_, head)) = u.split_last() else {
        return true;
    };
    if head.iter().all(|v| v.is_zero()) {
        return true;
    }
    if u[0].is_zero() {
        return false;
    }
    let ratio = u[1].clone() / u[0].clone();
    let mut expected = u[0].clone();
    for v in u {
        if !v.approx_eq(&expected) {
            return false;
        }
        expected = expected * ratio.clone();
    }
    true
}

/// `(−1)^{i+j} a_ij > 0` for every entry.
pub fn is_checkerboard<T: Scalar>(a: &Matrix<T>) -> bool {
    a.indexed().all(|((i, j), v)| {
        if (i + j) % 2 == 0 {
            *v > T::zero()
        } else {
            *v < T::zero()
        }
    })
}
