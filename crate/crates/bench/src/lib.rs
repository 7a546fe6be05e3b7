//! Deterministic inputs for the kernel benchmarks.

use momentlab_core::exactmat::Matrix;
use momentlab_core::moments::{hankel_from, moments_of, Measure};
use momentlab_core::scalar::{q, Rational};

/// A four-atom measure on `[0,1]` with small denominators.
pub fn unit_measure() -> Measure<Rational> {
    Measure::from_points([(q(1, 7), q(1, 2)), (q(2, 5), q(3, 4)), (q(5, 6), q(1, 3)), (q(1, 1), q(1, 5))])
        .expect("valid atoms")
}

/// Its `n × n` Hankel moment matrix.
pub fn unit_hankel(n: usize) -> Matrix<Rational> {
    let mu = unit_measure();
    hankel_from(&moments_of(&mu, 2 * n - 2).expect("moments"), n).expect("hankel")
}

/// The Hilbert matrix, a dense PSD matrix with growing denominators.
pub fn hilbert(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| q(1, (i + j + 1) as i64))
}
