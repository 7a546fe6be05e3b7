use anyhow::{bail, Context, Result};
use momentlab_core::exactmat::{adjugate, psd_certificate_in_mode, AnyMatrix};
use momentlab_core::moments::{hankel_from, moments_of, support_failure, MomentSeq};
use momentlab_core::scalar::{parse_rational, Mode, Rational};
use momentlab_core::tnlab::{
    appendix_table, default_delta_grid, find_negative_power_det, fine_delta_grid, fjs_m, is_tn_bruteforce,
    is_tn_hankel, power_det, quartic_coeff_identity, quartic_samples, QUARTIC_CONSTANT,
};
use momentlab_core::transforms::{critical_value, hook_schur_ones, jain_certificate, jain_draws, Transform};
use momentlab_core::verify::{minimize_counterexample, run_preserver, FamilyParams, PreserverRun, Verdict};
use serde_json::{json, Value};

use crate::io::{load_matrix, load_measure, load_seq, parse_json, transform_arg, Render};
use crate::{Command, Format, Grid, Outcome};

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn decide(holds: bool, v: Value) -> Outcome {
    if holds {
        Outcome::Holds(pretty(&v))
    } else {
        Outcome::Refuted(pretty(&v))
    }
}

pub fn run(cmd: Command, r: Render) -> Result<Outcome> {
    match cmd {
        Command::Moments { input, k, n } => {
            let mu = load_measure(&input.value()?)?;
            let s = moments_of(&mu, k)?;
            let h = hankel_from(&s, n.unwrap_or(k / 2 + 1))?;
            Ok(Outcome::Holds(pretty(&json!({ "sequence": r.seq(&s), "hankel": r.matrix(&h) }))))
        }
        Command::CheckSupport { input, support, mode, tol } => {
            let s = load_seq(&input.value()?)?;
            let failure = match Mode::from(mode) {
                Mode::Exact => support_failure(&s, support, tol)?,
                Mode::Float => support_failure(&s.to_f64(), support, tol)?,
            };
            let mut out = json!({ "support": support.to_string(), "verdict": "pass" });
            if let Some(f) = &failure {
                out["verdict"] = json!("fail");
                out["failure"] = serde_json::to_value(f)?;
            }
            Ok(decide(failure.is_none(), out))
        }
        Command::CheckPsd { input, mode, tol } => {
            let a = load_matrix(&input.value()?)?;
            let mode = if matches!(a, AnyMatrix::Float(_)) { Mode::Float } else { mode.into() };
            let cert = psd_certificate_in_mode(&a, mode, tol)?;
            let out = match &cert {
                None => json!({ "verdict": "psd" }),
                Some(c) => json!({ "verdict": "not_psd", "certificate": c }),
            };
            Ok(decide(cert.is_none(), out))
        }
        Command::CheckTn { input } => {
            let a = load_matrix(&input.value()?)?;
            let a = a.as_rational().context("TN checks need exact entries")?;
            let report = is_tn_bruteforce(a)?;
            let mut out = serde_json::to_value(&report)?;
            if a.is_square() && a.is_hankel() {
                out["hankel_criterion"] = json!(is_tn_hankel(a)?);
            }
            Ok(decide(report.verdict, out))
        }
        Command::Apply { input, transform, mode } => {
            let t = transform_arg(&transform)?;
            let v = input.value()?;
            let result = if let Ok(a) = load_matrix(&v) {
                apply_matrix(&t, &a, mode.into(), r)?
            } else {
                let s = load_seq(&v).context("input is neither a matrix nor a moment sequence")?;
                apply_seq(&t, &s, mode.into(), r)?
            };
            Ok(Outcome::Holds(pretty(&json!({ "result": result }))))
        }
        Command::CriticalValue { c, m, n, rho } => {
            let c: Vec<Rational> = c.iter().map(|v| parse_rational(v)).collect::<Result<_, _>>()?;
            if let Some(n) = n {
                if n != c.len() {
                    bail!("--n {n} does not match {} coefficients", c.len());
                }
            }
            Ok(Outcome::Holds(r.scalar(&critical_value(&c, m, &parse_rational(&rho)?)?)))
        }
        Command::HookSchur { m, n, j } => Ok(Outcome::Holds(hook_schur_ones(m, n, j)?.to_string())),
        Command::Jain { n, alpha, xs, draws, seed, tol } => {
            let sets = match xs {
                Some(xs) if xs.len() != n => bail!("--xs has {} points, --n is {n}", xs.len()),
                Some(xs) => vec![xs],
                None => jain_draws(n, draws, seed),
            };
            for xs in &sets {
                if let Some(c) = jain_certificate(xs, alpha, tol)? {
                    let out = json!({ "verdict": "not_psd", "n": n, "alpha": alpha, "xs": xs, "certificate": c });
                    return Ok(Outcome::Refuted(pretty(&out)));
                }
            }
            Ok(Outcome::Holds(pretty(&json!({ "verdict": "psd", "n": n, "alpha": alpha, "draws": sets.len() }))))
        }
        Command::Preserve { transform, family, n, count, mode, params, minimize, seed, tol } => {
            let t = transform_arg(&transform)?;
            let params: FamilyParams = match params {
                Some(p) => serde_json::from_value(parse_json("--params", &p)?).context("invalid family parameters")?,
                None => FamilyParams::default(),
            };
            let run = PreserverRun { family: family.parse()?, params, n, count, mode: mode.into(), seed, tol };
            let report = run_preserver(&t, &run)?;
            let holds = report.verdict == Verdict::Pass;
            let out = match minimize {
                Some(budget) if !holds => {
                    let small = minimize_counterexample(&report, budget)?;
                    json!({ "report": report, "counterexample": small })
                }
                _ => serde_json::to_value(&report)?,
            };
            Ok(decide(holds, out))
        }
        Command::AppendixA { format, seed } => appendix_a(format, seed, r),
        Command::DeltaSearch { alpha, grid, points } => {
            let (name, pts) = match (points, grid) {
                (Some(p), _) => ("custom", p),
                (None, Grid::Decade) => ("decade", default_delta_grid()),
                (None, Grid::Fine) => ("fine", fine_delta_grid()),
            };
            match find_negative_power_det(alpha, &pts)? {
                Some(x) => {
                    let det = power_det(alpha, x)?;
                    let out = json!({ "alpha": alpha, "grid": name, "x": x, "det": r.number(det) });
                    Ok(Outcome::Refuted(pretty(&out)))
                }
                None => Ok(Outcome::Holds(pretty(&json!({ "alpha": alpha, "grid": name, "x": null })))),
            }
        }
    }
}

fn apply_matrix(t: &Transform, a: &AnyMatrix, mode: Mode, r: Render) -> Result<Value> {
    // Float input can only be evaluated in float.
    let mode = if matches!(a, AnyMatrix::Float(_)) { Mode::Float } else { mode };
    Ok(match mode {
        Mode::Exact => r.matrix(&t.apply(a.as_rational().context("exact mode needs rational entries")?)?),
        Mode::Float => serde_json::to_value(AnyMatrix::Float(t.apply(&a.to_f64())?))?,
    })
}

fn apply_seq(t: &Transform, s: &MomentSeq<Rational>, mode: Mode, r: Render) -> Result<Value> {
    Ok(match mode {
        Mode::Exact => r.seq(&t.apply_seq(s)?),
        Mode::Float => {
            let out = t.apply_seq(&s.to_f64())?;
            json!({ "k": out.k(), "values": out.values() })
        }
    })
}

fn appendix_a(format: Format, seed: u64, r: Render) -> Result<Outcome> {
    let table = appendix_table();
    let sum: Rational = table.values().sum();
    let adj = adjugate(&fjs_m())?;
    let samples = quartic_samples(seed, 8);
    let mut holds = true;
    for alpha in &samples {
        let (computed, predicted) = quartic_coeff_identity(alpha)?;
        holds &= computed == predicted;
    }
    holds &= sum == Rational::from_integer(QUARTIC_CONSTANT.into());
    let text = match format {
        Format::Json => pretty(&json!({
            "table": table.iter().map(|(k, v)| json!({ "index": k, "det": r.scalar(v) })).collect::<Vec<_>>(),
            "sum": r.scalar(&sum),
            "adjugate": r.matrix(&adj),
            "quartic_identity": { "samples": samples.len(), "holds": holds },
        })),
        Format::Text => {
            let mut out = String::new();
            for (k, v) in &table {
                out.push_str(&format!("({},{},{},{})  {}\n", k[0], k[1], k[2], k[3], r.scalar(v)));
            }
            out.push_str(&format!("sum  {}\n", r.scalar(&sum)));
            out.push_str("adj(M)\n");
            for row in adj.to_rows() {
                let cells: Vec<String> = row.iter().map(|v| r.scalar(v)).collect();
                out.push_str(&format!("  [{}]\n", cells.join(", ")));
            }
            let verdict = if holds { "holds" } else { "FAILS" };
            out.push_str(&format!("quartic identity: {verdict} on {} seeded samples", samples.len()));
            out
        }
    };
    Ok(if holds { Outcome::Holds(text) } else { Outcome::Refuted(text) })
}
