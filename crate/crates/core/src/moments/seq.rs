//! Truncated moment sequences, Hankel matrices and truncated support criteria.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::measure::Measure;
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, PsdCertificate};
use crate::scalar::{rational_vec_serde, Rational, Scalar};

/// Moments `s_0..s_k`, optionally remembering the measure they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeq<T> {
    values: Vec<T>,
    source: Option<Measure<T>>,
}

impl<T: Scalar> MomentSeq<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Truncation("a moment sequence needs at least s_0".into()));
        }
        Ok(Self { values, source: None })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Truncation order `k` (index of the last moment).
    pub fn k(&self) -> usize {
        self.values.len() - 1
    }

    pub fn source(&self) -> Option<&Measure<T>> {
        self.source.as_ref()
    }

    pub fn map(&self, f: impl FnMut(&T) -> T) -> Self {
        Self { values: self.values.iter().map(f).collect(), source: None }
    }

    pub fn try_map(&self, mut f: impl FnMut(&T) -> Result<T>) -> Result<Self> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(n, v)| {
                f(v).map_err(|e| match e {
                    Error::Domain(msg) => Error::Domain(format!("moment s_{n}: {msg}")),
                    other => other,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { values, source: None })
    }

    pub fn to_f64(&self) -> MomentSeq<f64> {
        MomentSeq {
            values: self.values.iter().map(Scalar::to_f64).collect(),
            source: self.source.as_ref().map(Measure::to_f64),
        }
    }
}

/// `s_n = Σ w_i x_i^n` for `0 ≤ n ≤ k`.
pub fn moments_of<T: Scalar>(mu: &Measure<T>, k: usize) -> Result<MomentSeq<T>> {
    if mu.dim() != 1 {
        return Err(Error::Dimension(format!(
            "moments_of needs a one-dimensional measure, got dimension {}",
            mu.dim()
        )));
    }
    let mut values = vec![T::zero(); k + 1];
    for atom in mu.atoms() {
        if atom.w < T::zero() {
            return Err(Error::Validity(format!("negative weight {}", atom.w)));
        }
        let mut p = atom.w.clone();
        for v in values.iter_mut() {
            *v = v.clone() + p.clone();
            p = p * atom.x[0].clone();
        }
    }
    Ok(MomentSeq { values, source: Some(mu.clone()) })
}

/// `N×N` Hankel matrix with entries `s_{i+j}`.
pub fn hankel_from<T: Scalar>(s: &MomentSeq<T>, n: usize) -> Result<Matrix<T>> {
    hankel_of_slice(&s.values, n)
}

pub(crate) fn hankel_of_slice<T: Clone>(values: &[T], n: usize) -> Result<Matrix<T>> {
    if n > 0 && values.len() < 2 * n - 1 {
        return Err(Error::Truncation(format!(
            "{n}x{n} Hankel matrix needs {} moments, have {}",
            2 * n - 1,
            values.len()
        )));
    }
    Ok(Matrix::from_fn(n, n, |i, j| values[i + j].clone()))
}

/// `values[n] = s_{n+by}`.
pub fn shift<T: Scalar>(s: &MomentSeq<T>, by: usize) -> Result<MomentSeq<T>> {
    if by > s.k() {
        return Err(Error::Truncation(format!("cannot shift order-{} sequence by {by}", s.k())));
    }
    Ok(MomentSeq { values: s.values[by..].to_vec(), source: None })
}

/// Closed supports for which truncated necessary conditions are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SupportSet {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "[0,inf)")]
    HalfLine,
    #[serde(rename = "[-1,1]")]
    Symmetric,
    #[serde(rename = "[0,1]")]
    Unit,
}

impl SupportSet {
    pub const ALL: [SupportSet; 4] =
        [SupportSet::Real, SupportSet::HalfLine, SupportSet::Symmetric, SupportSet::Unit];
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportSet::Real => "R",
            SupportSet::HalfLine => "[0,inf)",
            SupportSet::Symmetric => "[-1,1]",
            SupportSet::Unit => "[0,1]",
        })
    }
}

impl FromStr for SupportSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace(' ', "").as_str() {
            "R" | "r" | "real" => Ok(SupportSet::Real),
            "[0,inf)" | "[0,∞)" | "halfline" | "R+" => Ok(SupportSet::HalfLine),
            "[-1,1]" | "sym" => Ok(SupportSet::Symmetric),
            "[0,1]" | "unit" => Ok(SupportSet::Unit),
            other => Err(Error::Config(format!(
                "unknown support {other:?}; expected R, [0,inf), [-1,1] or [0,1]"
            ))),
        }
    }
}

/// Which localizing matrix failed, with its PSD certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportFailure {
    /// `"hankel"`, `"t"`, `"1-t^2"` or `"1-t"`.
    pub localizer: String,
    pub size: usize,
    pub certificate: PsdCertificate,
}

/// The named localizing matrix at the largest size `s` allows.
pub fn localizer_matrix<T: Scalar>(s: &[T], name: &str) -> Matrix<T> {
    let k = s.len() - 1;
    let size = match name {
        "hankel" => k / 2 + 1,
        "1-t^2" => (k - 2) / 2 + 1,
        _ => (k - 1) / 2 + 1,
    };
    Matrix::from_fn(size, size, |i, j| {
        let n = i + j;
        match name {
            "hankel" => s[n].clone(),
            "t" => s[n + 1].clone(),
            "1-t" => s[n].clone() - s[n + 1].clone(),
            _ => s[n].clone() - s[n + 2].clone(),
        }
    })
}

/// First violated truncated necessary condition for support in `K`, if any.
///
/// Uses the largest square blocks the sequence allows: the Hankel matrix,
/// and the localizers for `t`, `1 − t²` and `1 − t` as `K` requires.
pub fn support_failure<T: Scalar>(
    s: &MomentSeq<T>,
    support: SupportSet,
    tol: f64,
) -> Result<Option<SupportFailure>> {
    if s.k() < 2 {
        return Err(Error::Truncation(format!(
            "support criteria need s_0..s_2 at least, have order {}",
            s.k()
        )));
    }
    let localizers: &[&str] = match support {
        SupportSet::Real => &["hankel"],
        SupportSet::HalfLine => &["hankel", "t"],
        SupportSet::Symmetric => &["hankel", "1-t^2"],
        SupportSet::Unit => &["hankel", "t", "1-t^2", "1-t"],
    };
    for name in localizers {
        let m = localizer_matrix(&s.values, name);
        if let Some(certificate) = T::psd_certificate(&m, tol)? {
            return Ok(Some(SupportFailure {
                localizer: (*name).to_string(),
                size: m.rows(),
                certificate,
            }));
        }
    }
    Ok(None)
}

/// Conjunction of the truncated necessary PSD conditions for support in `K`.
/// Passing does not certify that `s` is a moment sequence.
pub fn passes_truncated_criteria<T: Scalar>(
    s: &MomentSeq<T>,
    support: SupportSet,
    tol: f64,
) -> Result<bool> {
    Ok(support_failure(s, support, tol)?.is_none())
}

pub use passes_truncated_criteria as check_support;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeq {
    k: usize,
    #[serde(with = "rational_vec_serde")]
    values: Vec<Rational>,
}

impl Serialize for MomentSeq<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSeq { k: self.k(), values: self.values.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentSeq<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSeq::deserialize(d)?;
        if raw.values.len() != raw.k + 1 {
            return Err(D::Error::custom(format!(
                "k = {} needs {} values, found {}",
                raw.k,
                raw.k + 1,
                raw.values.len()
            )));
        }
        MomentSeq::new(raw.values).map_err(D::Error::custom)
    }
}
