//! Moments of measures on `[−1,1]^d` and their localized kernel matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::measure::Measure;
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, PsdCertificate};
use crate::scalar::Scalar;

/// `s_α` for every multi-index with `|α|_∞ ≤ 2r + 2`; the kernels are indexed
/// by `|α|_∞ ≤ r`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiMomentFamily<T> {
    dim: usize,
    r: usize,
    values: BTreeMap<Vec<usize>, T>,
}

/// All multi-indices in `{0..=cap}^d`, lexicographic.
pub fn multi_indices(d: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=cap).map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out
}

impl<T: Scalar> MultiMomentFamily<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, alpha: &[usize]) -> Option<&T> {
        self.values.get(alpha)
    }

    /// Overwrites one moment (used to build perturbed non-examples).
    pub fn set(&mut self, alpha: &[usize], value: T) -> Result<()> {
        match self.values.get_mut(alpha) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::Index(format!("multi-index {alpha:?} outside the family"))),
        }
    }

    fn at(&self, alpha: &[usize]) -> T {
        self.values[alpha].clone()
    }

    /// `(s_{α+β})` over `|α|_∞, |β|_∞ ≤ r`.
    pub fn base_kernel(&self) -> Matrix<T> {
        self.kernel(None)
    }

    /// `(s_{α+β} − s_{α+β+2e_j})`, the localizer for `1 − x_j²`.
    pub fn localized_kernel(&self, j: usize) -> Matrix<T> {
        self.kernel(Some(j))
    }

    fn kernel(&self, j: Option<usize>) -> Matrix<T> {
        let idx = multi_indices(self.dim, self.r);
        Matrix::from_fn(idx.len(), idx.len(), |a, b| {
            let sum: Vec<usize> = idx[a].iter().zip(&idx[b]).map(|(x, y)| x + y).collect();
            let base = self.at(&sum);
            match j {
                None => base,
                Some(j) => {
                    let mut up = sum;
                    up[j] += 2;
                    base - self.at(&up)
                }
            }
        })
    }
}

/// All moments `s_α` of `μ` up to `|α|_∞ ≤ 2r + 2`.
pub fn multi_moments_of<T: Scalar>(mu: &Measure<T>, r: usize) -> MultiMomentFamily<T> {
    let one = T::one();
    if !mu.supported_in(&-one.clone(), &one) {
        log::warn!("measure has atoms outside [-1,1]^{}; kernel checks still run", mu.dim());
    }
    let values = multi_indices(mu.dim(), 2 * r + 2)
        .into_iter()
        .map(|alpha| {
            let s = mu.atoms().iter().fold(T::zero(), |acc, atom| {
                let mono = atom
                    .x
                    .iter()
                    .zip(&alpha)
                    .fold(T::one(), |p, (x, &e)| p * x.pow_u(e as u32));
                acc + atom.w.clone() * mono
            });
            (alpha, s)
        })
        .collect();
    MultiMomentFamily { dim: mu.dim(), r, values }
}

/// A failing kernel: `None` is the base kernel, `Some(j)` the `1 − x_j²` localizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelFailure {
    pub localizer: Option<usize>,
    pub certificate: PsdCertificate,
}

pub fn multi_psd_failure<T: Scalar>(
    fam: &MultiMomentFamily<T>,
    tol: f64,
) -> Result<Option<KernelFailure>> {
    let kernels = std::iter::once(None).chain((0..fam.dim).map(Some));
    for localizer in kernels {
        if let Some(certificate) = T::psd_certificate(&fam.kernel(localizer), tol)? {
            return Ok(Some(KernelFailure { localizer, certificate }));
        }
    }
    Ok(None)
}

/// True iff the base kernel and every `1 − x_j²` localized kernel are PSD.
pub fn check_multi_psd<T: Scalar>(fam: &MultiMomentFamily<T>, tol: f64) -> Result<bool> {
    Ok(multi_psd_failure(fam, tol)?.is_none())
}
