#![allow(dead_code)]

use momentlab_core::exactmat::Matrix;
use momentlab_core::moments::Measure;
use momentlab_core::scalar::{q, Rational};
use proptest::prelude::*;

pub fn rational(max_abs: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_abs..=max_abs, 1..=max_den).prop_map(|(n, d)| q(n, d))
}

pub fn positive(max: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max, 1..=max_den).prop_map(|(n, d)| q(n, d))
}

pub fn square(n: usize, max_abs: i64) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(max_abs, 6), n * n).prop_map(move |v| Matrix::from_vec(n, n, v).unwrap())
}

pub fn square_any(sizes: std::ops::RangeInclusive<usize>, max_abs: i64) -> impl Strategy<Value = Matrix<Rational>> {
    sizes.prop_flat_map(move |n| square(n, max_abs))
}

/// Up to `max_atoms` atoms on the grid `lo + (hi − lo)·t/64` with positive weights.
pub fn measure_on(lo: Rational, hi: Rational, max_atoms: usize) -> impl Strategy<Value = Measure<Rational>> {
    prop::collection::vec((0i64..=64, positive(8, 8)), 1..=max_atoms).prop_map(move |pts| {
        let width = &hi - &lo;
        Measure::from_points(pts.into_iter().map(|(t, w)| (&lo + &width * q(t, 64), w))).unwrap()
    })
}

/// `Σ_{σ} sgn σ Π a_{i,σ(i)}` by cofactor expansion along the first row.
pub fn laplace_det(a: &Matrix<Rational>) -> Rational {
    let n = a.rows();
    if n == 1 {
        return a[(0, 0)].clone();
    }
    let mut total = q(0, 1);
    for c in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
        let term = &a[(0, c)] * laplace_det(&a.select(&rows, &cols).unwrap());
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
