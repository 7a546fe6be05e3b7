//! Matrix JSON: `{"mode":"rational"|"float","rows":[[...]]}`.
//!
//! Rational entries are canonical `"p/q"` strings; float entries are numbers.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rational_serde, Mode, Rational, Scalar};

/// A matrix in either numeric mode, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Float(Matrix<f64>),
}

impl AnyMatrix {
    pub fn mode(&self) -> Mode {
        match self {
            AnyMatrix::Rational(_) => Mode::Exact,
            AnyMatrix::Float(_) => Mode::Float,
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        match self {
            AnyMatrix::Rational(m) => m.to_f64(),
            AnyMatrix::Float(m) => m.clone(),
        }
    }

    pub fn as_rational(&self) -> Result<&Matrix<Rational>> {
        match self {
            AnyMatrix::Rational(m) => Ok(m),
            AnyMatrix::Float(_) => {
                Err(Error::Structure("exact mode needs a rational matrix".into()))
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("matrix serializes")
    }
}

impl From<Matrix<Rational>> for AnyMatrix {
    fn from(m: Matrix<Rational>) -> Self {
        AnyMatrix::Rational(m)
    }
}

impl From<Matrix<f64>> for AnyMatrix {
    fn from(m: Matrix<f64>) -> Self {
        AnyMatrix::Float(m)
    }
}

#[derive(Serialize, Deserialize)]
struct Raw {
    mode: String,
    rows: Vec<Vec<Value>>,
}

impl Serialize for AnyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            AnyMatrix::Rational(m) => Raw {
                mode: "rational".into(),
                rows: m
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|v| Value::String(format_rational(v))).collect())
                    .collect(),
            },
            AnyMatrix::Float(m) => Raw {
                mode: "float".into(),
                rows: m
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|&v| serde_json::json!(v)).collect())
                    .collect(),
            },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Raw::deserialize(d)?;
        let built = match raw.mode.as_str() {
            "rational" => raw
                .rows
                .iter()
                .map(|r| r.iter().map(rational_serde::from_value).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
                .and_then(Matrix::from_rows)
                .map(AnyMatrix::Rational),
            "float" => raw
                .rows
                .iter()
                .map(|r| r.iter().map(float_from_value).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
                .and_then(Matrix::from_rows)
                .map(AnyMatrix::Float),
            other => Err(Error::Parse(format!("unknown matrix mode {other:?}"))),
        };
        built.map_err(D::Error::custom)
    }
}

pub(crate) fn float_from_value(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad float {n}"))),
        Value::String(s) => match s.parse::<f64>() {
            Ok(x) => Ok(x),
            Err(_) => crate::scalar::parse_rational(s).map(|q| q.to_f64()),
        },
        other => Err(Error::Parse(format!("expected number, found {other}"))),
    }
}
