//! Forward-difference samplers for absolute and complete monotonicity.
//!
//! These are necessary-condition tests on a finite grid: a `false` is a
//! refutation, a `true` is only the absence of one.

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Differences below this count as negative.
pub const DIFF_TOL: f64 = -1e-9;

/// Sampling plan: `x_points` base points and `h_points` step sizes per order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffGrid {
    pub x_points: usize,
    pub h_points: usize,
}

impl Default for DiffGrid {
    fn default() -> Self {
        Self { x_points: 24, h_points: 6 }
    }
}

/// `Δ^n_h f(x) = Σ_k (−1)^{n−k} C(n,k) f(x + kh)`.
pub fn forward_difference(f: &dyn Fn(f64) -> f64, x: f64, h: f64, n: usize) -> f64 {
    let mut binom = 1.0;
    let mut sum = 0.0;
    for k in 0..=n {
        let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * f(x + k as f64 * h);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    sum
}

fn sample(
    f: &dyn Fn(f64) -> f64,
    (a, b): (f64, f64),
    n_max: usize,
    grid: DiffGrid,
    alternating: bool,
) -> bool {
    if !(a < b) {
        return false;
    }
    let width = b - a;
    for n in 0..=n_max {
        for hk in 1..=grid.h_points.max(1) {
            // keep x + n·h strictly inside (a, b)
            let h = width / ((n.max(1) * (hk + 1)) as f64);
            let span = width - n as f64 * h;
            for xi in 1..=grid.x_points.max(1) {
                let x = a + span * xi as f64 / (grid.x_points + 1) as f64;
                let d = forward_difference(f, x, h, n);
                let signed = if alternating && n % 2 == 1 { -d } else { d };
                if !(signed >= DIFF_TOL) {
                    return false;
                }
            }
        }
    }
    true
}

/// `Δ^n_h f(x) ≥ −1e−9` for all sampled `n ≤ n_max`, `x`, `h` in `(a, b)`.
pub fn abs_monotone_test(f: &dyn Fn(f64) -> f64, interval: (f64, f64), n_max: usize, grid: DiffGrid) -> bool {
    sample(f, interval, n_max, grid, false)
}

/// `(−1)^n Δ^n_h f(x) ≥ −1e−9` for all sampled `n ≤ n_max`, `x`, `h`.
pub fn complete_monotone_test(
    f: &dyn Fn(f64) -> f64,
    interval: (f64, f64),
    n_max: usize,
    grid: DiffGrid,
) -> bool {
    sample(f, interval, n_max, grid, true)
}

/// Forward differences of an evenly spaced table, exactly.
pub fn abs_monotone_test_tabulated(points: &[(Rational, Rational)], n_max: usize) -> Result<bool> {
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p.0.cmp(&q.0));
    if pts.len() >= 2 {
        let h = &pts[1].0 - &pts[0].0;
        if pts.windows(2).any(|w| &w[1].0 - &w[0].0 != h) || h.is_zero() {
            return Err(Error::Precondition("tabulated samples must be evenly spaced and distinct".into()));
        }
    }
    let mut row: Vec<Rational> = pts.into_iter().map(|p| p.1).collect();
    for _ in 0..=n_max {
        if row.iter().any(|v| v.to_f64() < DIFF_TOL) {
            return Ok(false);
        }
        if row.len() < 2 {
            break;
        }
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Ok(true)
}
