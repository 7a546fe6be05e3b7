//! Scalar types shared by every module: exact rationals and IEEE doubles.
//!
//! Most algorithms are written once against [`Scalar`]. The choice of scalar
//! fixes the mode: `Rational` gives exact verdicts (principal minors), `f64`
//! gives floating verdicts (Jacobi eigenvalues with a relative tolerance).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{Num, Signed, ToPrimitive, Zero};
use num::BigRational;

use crate::error::{Error, Result};
use crate::exactmat::psd::{self, PsdCertificate};
use crate::exactmat::Matrix;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Numeric mode of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Default relative tolerance for floating PSD verdicts.
pub const DEFAULT_TOL: f64 = 1e-10;

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    const MODE: Mode;

    fn from_rational(q: &Rational) -> Self;

    /// Converts a finite double; rationals convert exactly.
    fn from_f64(x: f64) -> Result<Self>;

    fn to_f64(&self) -> f64;

    /// The exact value, when the scalar is exact.
    fn as_rational(&self) -> Option<Rational>;

    /// Real power with the conventions `0^α = 0` for `α > 0` and `0^0 = 1`.
    /// Rationals only support integer exponents.
    fn powf(&self, alpha: f64) -> Result<Self>;

    /// Equality for structural tests: exact for rationals, relative `1e-12` for doubles.
    fn approx_eq(&self, other: &Self) -> bool;

    /// First PSD violation found, or `None` when the matrix passes.
    fn psd_certificate(a: &Matrix<Self>, tol: f64) -> Result<Option<PsdCertificate>>;

    fn pow_u(&self, n: u32) -> Self {
        num::traits::pow(self.clone(), n as usize)
    }
}

fn integer_exponent(alpha: f64) -> Option<i64> {
    if alpha.is_finite() && alpha.fract() == 0.0 && alpha.abs() < 1e9 {
        Some(alpha as i64)
    } else {
        None
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_f64(x: f64) -> Result<Self> {
        Rational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn powf(&self, alpha: f64) -> Result<Self> {
        let n = integer_exponent(alpha).ok_or_else(|| {
            Error::Domain(format!("exponent {alpha} is not an integer; use float mode"))
        })?;
        if n >= 0 {
            Ok(self.pow_u(n as u32))
        } else if self.is_zero() {
            Err(Error::Domain(format!("0 raised to negative power {n}")))
        } else {
            Ok(self.pow_u((-n) as u32).recip())
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn psd_certificate(a: &Matrix<Self>, _tol: f64) -> Result<Option<PsdCertificate>> {
        psd::exact_certificate(a)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_f64(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Domain(format!("non-finite value {x}")))
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_rational(&self) -> Option<Rational> {
        None
    }

    fn powf(&self, alpha: f64) -> Result<Self> {
        let x = *self;
        if let Some(n) = integer_exponent(alpha) {
            if x == 0.0 && n < 0 {
                return Err(Error::Domain(format!("0 raised to negative power {n}")));
            }
            return Ok(x.powi(n as i32));
        }
        if x > 0.0 {
            Ok(x.powf(alpha))
        } else if x == 0.0 && alpha > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!(
                "non-integer power {alpha} of non-positive value {x}"
            )))
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-12 * self.abs().max(other.abs()).max(1.0)
    }

    fn psd_certificate(a: &Matrix<Self>, tol: f64) -> Result<Option<PsdCertificate>> {
        psd::float_certificate(a, tol)
    }
}

/// `n/d` as a rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or a decimal such as `"-0.125"` / `"1e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if t.contains('/') {
        let r = Rational::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        return Ok(r);
    }
    if let Ok(n) = BigInt::from_str(t) {
        return Ok(Rational::from_integer(n));
    }
    parse_decimal(t).ok_or_else(|| Error::Parse(format!("{t:?} is not a rational")))
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str_radix(&digits, 10).ok()?);
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num::traits::pow(ten, scale as usize);
    } else {
        value /= num::traits::pow(ten, (-scale) as usize);
    }
    Some(if neg { -value } else { value })
}

/// Canonical string form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering with 17 significant digits.
pub fn format_decimal(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serde adapter: rationals as canonical strings; accepts strings or JSON numbers.
pub mod rational_serde {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_value(&v).map_err(de::Error::custom)
    }

    pub(crate) fn from_value(v: &serde_json::Value) -> Result<Rational> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!("expected rational, found {other}"))),
        }
    }
}

pub mod rational_vec_serde {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.iter()
            .map(rational_serde::from_value)
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)
    }
}
