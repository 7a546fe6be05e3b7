//! Preserver runs over a test family and counterexample shrinking.

use num::traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{gen_family, Family, FamilyParams, Instance, Target};
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, PsdCertificate};
use crate::moments::{localizer_matrix, moments_of, support_failure, Measure, MomentSeq, SupportSet};
use crate::scalar::{Mode, Rational, Scalar, DEFAULT_TOL};
use crate::transforms::Transform;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Why an instance failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "cause", rename_all = "snake_case")]
pub enum FailureCause {
    /// A re-verified PSD violation of the named matrix (`"matrix"` for plain
    /// PSD, otherwise a localizer name).
    Certificate { localizer: String, size: usize, certificate: PsdCertificate },
    /// The transform is undefined on some entry.
    Domain { message: String },
}

impl FailureCause {
    fn same_kind(&self, other: &FailureCause) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub instance: Instance,
    pub cause: FailureCause,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreserverReport {
    pub transform: Transform,
    pub family: Family,
    pub n: usize,
    pub mode: Mode,
    pub seed: u64,
    pub tol: f64,
    pub instances_run: usize,
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
}

/// Settings for [`run_preserver`].
#[derive(Debug, Clone, PartialEq)]
pub struct PreserverRun {
    pub family: Family,
    pub params: FamilyParams,
    pub n: usize,
    pub count: usize,
    pub mode: Mode,
    pub seed: u64,
    pub tol: f64,
}

impl PreserverRun {
    pub fn new(family: Family, n: usize, count: usize) -> Self {
        PreserverRun {
            family,
            params: FamilyParams::default(),
            n,
            count,
            mode: Mode::Exact,
            seed: 0,
            tol: DEFAULT_TOL,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

fn check_n(inst: &Instance, n: usize) -> Result<()> {
    match inst.size_hint() {
        None if n < 2 => Err(Error::Precondition(format!("measure families need N >= 2, got {n}"))),
        Some(size) if n == 0 || n > size => {
            Err(Error::Precondition(format!("N = {n} does not fit a {size}x{size} instance")))
        }
        _ => Ok(()),
    }
}

fn psd_failure<T: Scalar>(a: &Matrix<T>, tol: f64, localizer: &str) -> Result<Option<FailureCause>> {
    match T::psd_certificate(a, tol)? {
        None => Ok(None),
        Some(certificate) => {
            if !certificate.reverify(a, tol) {
                return Err(Error::InvariantViolation(format!("{localizer} certificate did not re-verify")));
            }
            Ok(Some(FailureCause::Certificate { localizer: localizer.into(), size: a.rows(), certificate }))
        }
    }
}

fn image_failure<T: Scalar>(
    t: &Transform,
    inst: &Instance,
    n: usize,
    target: Target,
    tol: f64,
) -> Result<Option<FailureCause>> {
    let domain = |e: Error| match e {
        Error::Domain(message) => Ok(Some(FailureCause::Domain { message })),
        other => Err(other),
    };
    let (Instance::Measure(mu), Target::Support(_) | Target::NegUnit) = (inst, target) else {
        let a = inst.matrix(n)?.map(T::from_rational);
        return match t.apply(&a) {
            Ok(fa) => psd_failure(&fa, tol, "matrix"),
            Err(e) => domain(e),
        };
    };
    let exact = moments_of(mu, 2 * n - 2)?;
    let s = MomentSeq::new(exact.values().iter().map(T::from_rational).collect())?;
    let image = match t.apply_seq(&s) {
        Ok(image) => image,
        Err(e) => return domain(e),
    };
    let (image, set) = match target {
        Target::Support(set) => (image, set),
        _ => {
            let flipped = image.values().iter().enumerate();
            let flipped = flipped.map(|(k, v)| if k % 2 == 0 { v.clone() } else { -v.clone() });
            (MomentSeq::new(flipped.collect())?, SupportSet::Unit)
        }
    };
    match support_failure(&image, set, tol)? {
        None => Ok(None),
        Some(f) => {
            let m = localizer_matrix(image.values(), &f.localizer);
            if !f.certificate.reverify(&m, tol) {
                return Err(Error::InvariantViolation(format!("{} certificate did not re-verify", f.localizer)));
            }
            Ok(Some(FailureCause::Certificate { localizer: f.localizer, size: f.size, certificate: f.certificate }))
        }
    }
}

/// Checks one instance at truncation `n`.
pub fn check_instance(
    t: &Transform,
    inst: &Instance,
    family: Family,
    n: usize,
    mode: Mode,
    tol: f64,
) -> Result<Option<FailureCause>> {
    check_n(inst, n)?;
    match mode {
        Mode::Exact => image_failure::<Rational>(t, inst, n, family.target(), tol),
        Mode::Float => image_failure::<f64>(t, inst, n, family.target(), tol),
    }
}

/// Applies `t` to every generated instance and judges the image: truncated
/// support criteria for measure families, plain PSD for matrix families.
pub fn run_preserver(t: &Transform, run: &PreserverRun) -> Result<PreserverReport> {
    t.validate()?;
    let instances = gen_family(run.family, &run.params, run.seed, run.count)?;
    let checked: Vec<Option<Failure>> = instances
        .into_par_iter()
        .enumerate()
        .map(|(index, instance)| {
            let cause = check_instance(t, &instance, run.family, run.n, run.mode, run.tol)?;
            Ok(cause.map(|cause| Failure { index, instance, cause }))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<Failure> = checked.into_iter().flatten().collect();
    let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(PreserverReport {
        transform: t.clone(),
        family: run.family,
        n: run.n,
        mode: run.mode,
        seed: run.seed,
        tol: run.tol,
        instances_run: run.count,
        failures,
        verdict,
    })
}

/// The smallest failing instance found by [`minimize_counterexample`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub instance: Instance,
    pub cause: FailureCause,
    pub checks_used: usize,
}

/// Candidate replacements for a weight, simplest first.
fn simpler_weights(w: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for den in [1i64, 2, 4, 8, 16, 32] {
        let d = Rational::from_integer(den.into());
        let r = (w * &d).round() / d;
        if r > Rational::zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    out.retain(|c| c.denom() < w.denom() || (c.denom() == w.denom() && c.numer() < w.numer()));
    out
}

fn measure_candidates(mu: &Measure<Rational>) -> Vec<Instance> {
    let atoms = mu.atoms();
    let mut out = Vec::new();
    if atoms.len() > 1 {
        for skip in 0..atoms.len() {
            let kept = atoms.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, a)| a.clone()).collect();
            if let Ok(m) = Measure::new(mu.dim(), kept) {
                out.push(Instance::Measure(m));
            }
        }
    }
    for (i, atom) in atoms.iter().enumerate() {
        for w in simpler_weights(&atom.w) {
            let mut next = atoms.to_vec();
            next[i].w = w;
            if let Ok(m) = Measure::new(mu.dim(), next) {
                out.push(Instance::Measure(m));
            }
        }
    }
    out
}

/// Greedy shrinking of the first failure in `report`: drop atoms, then move
/// weights to simpler rationals, then lower `N`, keeping a step only when the
/// same kind of failure persists. Each candidate check costs one unit of
/// `budget`.
pub fn minimize_counterexample(report: &PreserverReport, budget: usize) -> Result<Counterexample> {
    let first = report
        .failures
        .first()
        .ok_or_else(|| Error::Precondition("report has no failures to minimize".into()))?;
    let mut best = Counterexample { n: report.n, instance: first.instance.clone(), cause: first.cause.clone(), checks_used: 0 };
    let check = |inst: &Instance, n: usize| {
        check_instance(&report.transform, inst, report.family, n, report.mode, report.tol)
    };

    let mut improved = true;
    while improved && best.checks_used < budget {
        improved = false;
        let candidates = match &best.instance {
            Instance::Measure(mu) => measure_candidates(mu),
            Instance::Matrix(_) => Vec::new(),
        };
        for cand in candidates {
            if best.checks_used >= budget {
                break;
            }
            best.checks_used += 1;
            if let Some(cause) = check(&cand, best.n)? {
                if cause.same_kind(&best.cause) {
                    best.instance = cand;
                    best.cause = cause;
                    improved = true;
                    break;
                }
            }
        }
    }

    let min_n = if best.instance.size_hint().is_some() { 1 } else { 2 };
    while best.n > min_n && best.checks_used < budget {
        best.checks_used += 1;
        match check(&best.instance, best.n - 1)? {
            Some(cause) if cause.same_kind(&best.cause) => {
                best.n -= 1;
                best.cause = cause;
            }
            _ => break,
        }
    }
    if let Instance::Matrix(m) = &best.instance {
        if m.as_rational()?.rows() != best.n {
            best.instance = Instance::Matrix(best.instance.matrix(best.n)?.into());
        }
    }
    Ok(best)
}
