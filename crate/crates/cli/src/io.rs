//! Input sources, JSON decoding with locations, and output rendering.

use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use momentlab_core::exactmat::{AnyMatrix, Matrix};
use momentlab_core::moments::{Measure, MomentSeq};
use momentlab_core::scalar::{format_decimal, format_rational, Rational};
use momentlab_core::transforms::Transform;
use serde_json::{json, Value};

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct Input {
    /// JSON input file, or `-` for stdin.
    #[arg(long, value_name = "PATH")]
    pub input: Option<String>,

    /// Inline JSON input.
    #[arg(long = "json", value_name = "TEXT")]
    pub json: Option<String>,
}

impl Input {
    pub fn value(&self) -> Result<Value> {
        let (label, text) = match (&self.input, &self.json) {
            (Some(path), _) => (path.clone(), read_path(path)?),
            (_, Some(text)) => ("--json".to_string(), text.clone()),
            _ => bail!("one of --input or --json is required"),
        };
        parse_json(&label, &text)
    }
}

fn read_path(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

/// Parses JSON, reporting the line and column of a syntax error.
pub fn parse_json(label: &str, text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        anyhow!("{label}: malformed JSON at line {} column {}: {e}", e.line(), e.column())
    })
}

/// A transform given inline (starting with `{`) or as a file path.
pub fn transform_arg(arg: &str) -> Result<Transform> {
    let v = if arg.trim_start().starts_with('{') {
        parse_json("--transform", arg)?
    } else {
        parse_json(arg, &read_path(arg)?)?
    };
    let t: Transform = serde_json::from_value(v).context("invalid transform")?;
    t.validate()?;
    Ok(t)
}

/// Follows the wrapper keys other subcommands emit.
fn unwrap<'a>(v: &'a Value, keys: &[&str]) -> &'a Value {
    keys.iter().find_map(|k| v.get(*k)).map(|inner| unwrap(inner, keys)).unwrap_or(v)
}

pub fn load_matrix(v: &Value) -> Result<AnyMatrix> {
    let v = unwrap(v, &["result", "hankel", "matrix"]);
    if v.get("rows").is_none() {
        bail!("expected a matrix object with \"rows\"");
    }
    Ok(AnyMatrix::from_json_str(&v.to_string())?)
}

pub fn load_seq(v: &Value) -> Result<MomentSeq<Rational>> {
    let v = unwrap(v, &["result", "sequence"]);
    serde_json::from_value(v.clone()).context("invalid moment sequence")
}

pub fn load_measure(v: &Value) -> Result<Measure<Rational>> {
    serde_json::from_value(v.clone()).context("invalid measure")
}

/// Exact strings, or decimals with 17 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Render {
    pub float: bool,
}

impl Render {
    pub fn scalar(self, r: &Rational) -> String {
        if self.float {
            format_decimal(momentlab_core::Scalar::to_f64(r))
        } else {
            format_rational(r)
        }
    }

    pub fn number(self, x: f64) -> String {
        format_decimal(x)
    }

    pub fn matrix(self, m: &Matrix<Rational>) -> Value {
        let any = if self.float { AnyMatrix::Float(m.to_f64()) } else { AnyMatrix::Rational(m.clone()) };
        serde_json::to_value(any).expect("matrix serializes")
    }

    pub fn seq(self, s: &MomentSeq<Rational>) -> Value {
        if self.float {
            let values: Vec<f64> = s.to_f64().values().to_vec();
            json!({ "k": s.k(), "values": values })
        } else {
            serde_json::to_value(s).expect("sequence serializes")
        }
    }
}
