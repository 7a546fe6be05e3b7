//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use momentlab_core::exactmat::{adjugate, det_exact, min_eigenvalue, Matrix, PsdCertificate};
use momentlab_core::moments::{hankel_from, moments_of, Measure};
use momentlab_core::scalar::{q, qi, Rational, Scalar, DEFAULT_TOL};
use momentlab_core::tnlab::{
    default_delta_grid, find_negative_power_det, fjs_m, is_tn_bruteforce, is_tn_hankel, power_det,
    quartic_coeff_identity, quartic_samples, QUARTIC_CONSTANT,
};
use momentlab_core::transforms::{
    boundary_matrix, critical_value, facewise_apply, facewise_decompose, h_a, hook_schur_ones, jain_draws,
    jain_matrix, jain_psd, odd_composite_identity, subsets, udcc_matrix, FacewiseMap, MultiPoly, Term, Transform,
};
use momentlab_core::verify::{
    gen_family, run_preserver, threshold_by_bisection, Bisection, Failure, FailureCause, Family, FamilyParams,
    Instance, PreserverRun, Verdict,
};
use momentlab_core::Mode;
use num::bigint::BigUint;
use num::traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn exact(a: &Matrix<Rational>) -> momentlab_core::Result<Option<PsdCertificate>> {
    Rational::psd_certificate(a, 0.0)
}

fn hankel(mu: &Measure<Rational>, n: usize) -> Matrix<Rational> {
    hankel_from(&moments_of(mu, 2 * n - 2).unwrap(), n).unwrap()
}

const GOLDEN: [([usize; 4], i64); 12] = [
    ([0, 1, 1, 2], 1398912),
    ([0, 1, 2, 1], -138048),
    ([0, 2, 1, 1], -96384),
    ([1, 0, 1, 2], -2431744),
    ([1, 0, 2, 1], 598304),
    ([1, 1, 0, 2], 699552),
    ([1, 1, 2, 0], -72224),
    ([1, 2, 0, 1], -46224),
    ([1, 2, 1, 0], 21520),
    ([2, 0, 1, 1], 14432),
    ([2, 1, 0, 1], -5208),
    ([2, 1, 1, 0], -56),
];

fn appendix_table() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_momentlab"))
        .args(["appendix-a", "--format", "json"])
        .env_remove("MOMENTLAB_SEED")
        .output()
        .map_err(e)?;
    ensure(out.status.code() == Some(0), format!("exit {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(e)?;
    let rows = v["table"].as_array().ok_or("no table")?;
    ensure(rows.len() == 12, format!("{} rows", rows.len()))?;
    for (k, want) in GOLDEN {
        let row = rows
            .iter()
            .find(|r| r["index"] == serde_json::json!(k))
            .ok_or(format!("missing row {k:?}"))?;
        ensure(row["det"].as_str() == Some(want.to_string().as_str()), format!("{k:?}: got {}, want {want}", row["det"]))?;
    }
    let golden_sum: i64 = GOLDEN.iter().map(|(_, v)| v).sum();
    ensure(v["sum"] == "-57168" && golden_sum == -57168, format!("sum {}", v["sum"]))?;
    Ok("12 determinants and sum -57168 exact".into())
}

fn quartic_identity() -> Check {
    let samples = quartic_samples(0, 8);
    for alpha in &samples {
        let (computed, predicted) = quartic_coeff_identity(alpha).map_err(e)?;
        let direct = qi(QUARTIC_CONSTANT) * &alpha[0] * &alpha[1] * &alpha[1] * &alpha[2];
        ensure(computed == predicted && predicted == direct, format!("alpha {alpha:?}: {computed} vs {direct}"))?;
    }
    Ok(format!("{} seeded samples exact", samples.len()))
}

fn adjugate_structure() -> Check {
    let m = fjs_m();
    let adj = adjugate(&m).map_err(e)?;
    let v = [6, -11, 6, -1].map(qi);
    let u = [46, -59, 18, -1].map(qi);
    let lambda = &adj[(0, 0)] / (&v[0] * &u[0]);
    ensure(!lambda.is_zero(), "adjugate vanishes")?;
    let expected = Matrix::outer(&v, &u).scale(&lambda);
    ensure(adj == expected, "adj(M) is not a multiple of v u^T")?;
    ensure(m.matmul(&adj).map_err(e)? == Matrix::zeros(4, 4), "M adj(M) != 0")?;
    ensure(det_exact(&m).map_err(e)?.is_zero(), "det M != 0")?;
    Ok(format!("adj(M) = {lambda} v u^T, M adj(M) = 0, det M = 0"))
}

fn random_measure(rng: &mut ChaCha8Rng) -> Measure<Rational> {
    let atoms = rng.gen_range(1..=4);
    let points = (0..atoms).map(|_| {
        let d = rng.gen_range(1..=9);
        (q(rng.gen_range(0..=d), d), q(rng.gen_range(1..=12), rng.gen_range(1..=6)))
    });
    Measure::from_points(points.collect::<Vec<_>>()).unwrap()
}

fn tn_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut tn, mut not_tn) = (0, 0);
    for i in 0..200 {
        let n = rng.gen_range(2..=5);
        let mu = random_measure(&mut rng);
        let mut s = moments_of(&mu, 2 * n - 2).unwrap().values().to_vec();
        if i % 2 == 1 {
            let k = rng.gen_range(0..s.len());
            s[k] += q(rng.gen_range(-8..=8), rng.gen_range(1..=8));
        }
        let a = Matrix::from_fn(n, n, |i, j| s[i + j].clone());
        let brute = is_tn_bruteforce(&a).map_err(e)?.verdict;
        let crit = is_tn_hankel(&a).map_err(e)?;
        ensure(brute == crit, format!("instance {i} disagrees: bruteforce {brute}, criterion {crit}"))?;
        if brute {
            tn += 1
        } else {
            not_tn += 1
        }
    }
    ensure(tn > 0 && not_tn > 0, format!("not mixed: {tn} TN, {not_tn} not"))?;
    Ok(format!("0 disagreements ({tn} TN, {not_tn} not TN)"))
}

fn power_criterion() -> Check {
    let draws = jain_draws(3, 50, 0);
    let mut lowest = f64::INFINITY;
    for xs in &draws {
        lowest = lowest.min(min_eigenvalue(&jain_matrix(xs, 0.5).map_err(e)?).map_err(e)?);
    }
    ensure(lowest < -1e-8, format!("alpha 0.5: min eigenvalue {lowest:e}"))?;
    for alpha in [1.0, 2.0, 1.5] {
        for xs in &draws {
            ensure(jain_psd(xs, alpha, DEFAULT_TOL).map_err(e)?, format!("alpha {alpha} not PSD at {xs:?}"))?;
        }
    }
    Ok(format!("alpha 0.5 min eigenvalue {lowest:.3e}; alpha 1, 2, 1.5 PSD on 50 draws"))
}

fn critical_value_bisection() -> Check {
    let c = [qi(1), qi(1)];
    let mut parts = Vec::new();
    for m in [2u32, 3] {
        let formula = critical_value(&c, m as usize, &qi(1)).map_err(e)?;
        let threshold = threshold_by_bisection(&c, m, &qi(1), &Bisection::default()).map_err(e)?;
        let want = -Rational::one() / &formula;
        let rel = ((&threshold - &want) / &want).abs().to_f64();
        ensure(rel < 1e-6, format!("M={m}: bisection {threshold} vs -1/{formula}, rel {rel:e}"))?;
        parts.push(format!("M={m}: C={formula}, rel {rel:.1e}"));
    }
    Ok(parts.join("; "))
}

/// Semistandard tableaux of shape `lambda` with entries in `1..=n`.
fn count_ssyt(lambda: &[usize], n: usize) -> u64 {
    fn fill(cells: &[(usize, usize)], at: usize, t: &mut BTreeMap<(usize, usize), usize>, n: usize) -> u64 {
        let Some(&(r, c)) = cells.get(at) else { return 1 };
        let lo = if c > 0 { t[&(r, c - 1)] } else { 1 }.max(if r > 0 { t[&(r - 1, c)] + 1 } else { 1 });
        let mut total = 0;
        for v in lo..=n {
            t.insert((r, c), v);
            total += fill(cells, at + 1, t, n);
        }
        t.remove(&(r, c));
        total
    }
    let cells: Vec<_> = lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    fill(&cells, 0, &mut BTreeMap::new(), n)
}

fn hook_schur() -> Check {
    let mut cases = 0;
    for m in 1..=6usize {
        for n in 1..=4usize.min(m) {
            for j in 0..n {
                let mut shape = vec![m - n + 1];
                shape.extend(std::iter::repeat_n(1, n - j - 1));
                let got = hook_schur_ones(m, n, j).map_err(e)?;
                let want = BigUint::from(count_ssyt(&shape, n));
                ensure(got == want, format!("M={m} N={n} j={j}: {got} vs {want}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases exact"))
}

fn delta_search() -> Check {
    let grid = default_delta_grid();
    let x = find_negative_power_det(2.0, &grid).map_err(e)?.ok_or("alpha 2: no negative determinant")?;
    let det = power_det(2.0, x).map_err(e)?;
    ensure(x < 1.0 && det < -1e-12, format!("alpha 2: x {x}, det {det:e}"))?;
    let none = find_negative_power_det(1.0, &grid).map_err(e)?;
    ensure(none.is_none(), format!("alpha 1 hit at {none:?}"))?;
    Ok(format!("alpha 2: det {det:.3e} at x = {x}; alpha 1: none"))
}

/// Rebuilds the failing matrix and re-checks a certificate independently.
fn reverify(t: &Transform, f: &Failure, mode: Mode) -> Result<(), String> {
    let FailureCause::Certificate { localizer, size, certificate } = &f.cause else {
        return Err(format!("instance {} failed by domain", f.index));
    };
    if localizer != "hankel" && localizer != "matrix" {
        return Err(format!("unexpected localizer {localizer}"));
    }
    let a = f.instance.matrix(*size).map_err(e)?;
    let ok = match mode {
        Mode::Exact => certificate.reverify(&t.apply(&a).map_err(e)?, DEFAULT_TOL),
        Mode::Float => certificate.reverify(&t.apply(&a.to_f64()).map_err(e)?, DEFAULT_TOL),
    };
    ensure(ok, format!("certificate on instance {} does not re-verify", f.index))
}

fn random_facewise(rng: &mut ChaCha8Rng, m: usize) -> FacewiseMap {
    let g = subsets(m)
        .into_iter()
        .map(|face| {
            let k = face.len();
            let terms = (0..rng.gen_range(1..=3))
                .map(|_| Term { c: q(rng.gen_range(1..=9), rng.gen_range(1..=4)), e: (0..k).map(|_| rng.gen_range(0..=2)).collect() })
                .collect();
            (face, MultiPoly::new(k, terms).unwrap())
        })
        .collect();
    FacewiseMap::new(m, g).unwrap()
}

fn preserver_suites() -> Check {
    let polys = [vec![qi(1), qi(1), q(1, 2)], vec![qi(0), qi(0), qi(0), qi(2)], vec![q(1, 3), qi(0), qi(1), q(1, 5)]];
    for c in &polys {
        let t = Transform::poly(c.clone());
        for family in [Family::MeasuresUnit, Family::MeasuresSymmetric] {
            let r = run_preserver(&t, &PreserverRun::new(family, 4, 100)).map_err(e)?;
            ensure(r.verdict == Verdict::Pass && r.instances_run == 100, format!("{c:?} on {}", family.name()))?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let neg = gen_family(Family::MeasuresNegUnit, &FamilyParams::default(), 0, 100).map_err(e)?;
    for c in &polys {
        let base = Transform::poly(c.clone());
        let odd = Transform::odd_ext(base.clone());
        for family in [Family::MeasuresNegUnit, Family::TwoPointNeg] {
            let r = run_preserver(&odd, &PreserverRun::new(family, 4, 100)).map_err(e)?;
            ensure(r.verdict == Verdict::Pass, format!("odd extension of {c:?} fails on {}", family.name()))?;
        }
        for inst in &neg {
            let Instance::Measure(mu) = inst else { return Err("expected a measure".into()) };
            ensure(odd_composite_identity(&base, mu, 4).map_err(e)?, format!("composite identity fails for {mu:?}"))?;
        }
    }

    let f = random_facewise(&mut rng, 2);
    let unit = gen_family(Family::MeasuresUnit, &FamilyParams::default(), 3, 100).map_err(e)?;
    for (i, inst) in unit.iter().enumerate() {
        let Instance::Measure(a) = inst else { return Err("expected a measure".into()) };
        // Every fourth partner sits on a smaller face.
        let b = match i % 4 {
            0 => Measure::zero(1),
            1 => Measure::point_mass(qi(0), q(i as i64 + 1, 7)).unwrap(),
            _ => random_measure(&mut rng),
        };
        let mats = [hankel(a, 3), hankel(&b, 3)];
        let direct = facewise_apply(&f, &mats).map_err(e)?;
        ensure(facewise_decompose(&f, &mats).map_err(e)?.reconstruct() == direct, format!("facewise instance {i}"))?;
    }

    // Negative controls.
    let half = Transform::power(0.5);
    let r = run_preserver(&half, &PreserverRun::new(Family::TwoPointOneU0, 4, 100).mode(Mode::Float)).map_err(e)?;
    ensure(r.verdict == Verdict::Fail, "Power(1/2) passed")?;
    for fail in &r.failures {
        reverify(&half, fail, Mode::Float)?;
    }
    let half_fails = r.failures.len();

    let jump0 = Transform::Jump {
        base: Box::new(Transform::poly(vec![qi(1), qi(1)])),
        rho: qi(1),
        value_at_0: Some(q(1, 2)),
        value_at_rho: None,
        value_at_neg_rho: None,
    };
    let run = PreserverRun { params: FamilyParams { a: q(1, 100), ..FamilyParams::default() }, ..PreserverRun::new(Family::HaBoundary, 3, 20) };
    let r = run_preserver(&jump0, &run).map_err(e)?;
    ensure(r.failures.len() == 20, format!("jump at 0 refuted on {}/20 H_a", r.failures.len()))?;
    for fail in &r.failures {
        reverify(&jump0, fail, Mode::Exact)?;
    }

    let (a, rho) = (q(1, 2), qi(1));
    let boundary = |neg: Rational, pos: Rational| Transform::Jump {
        base: Box::new(Transform::identity()),
        rho: rho.clone(),
        value_at_0: None,
        value_at_rho: Some(&rho + pos),
        value_at_neg_rho: Some(-&rho + neg),
    };
    let bad = boundary(q(1, 2), qi(0)).apply(&boundary_matrix(&a, &rho)).map_err(e)?;
    let cert = exact(&bad).map_err(e)?.ok_or("boundary jump with |d-| > d+ passed")?;
    ensure(cert.reverify(&bad, 0.0), "boundary certificate does not re-verify")?;
    let good = boundary(q(-1, 4), q(1, 2)).apply(&boundary_matrix(&a, &rho)).map_err(e)?;
    ensure(exact(&good).map_err(e)?.is_none(), "boundary jump with |d-| <= d+ refuted")?;

    let (ua, urho) = (q(1, 3), qi(2));
    let u = udcc_matrix(&urho, &ua);
    let det = det_exact(&u).map_err(e)?;
    ensure(det == -(&urho) * (&urho - &ua) * (&urho - &ua), format!("udcc det {det}"))?;
    let cert = exact(&u).map_err(e)?.ok_or("udcc matrix passed")?;
    ensure(cert.reverify(&u, 0.0), "udcc certificate does not re-verify")?;
    ensure(exact(&h_a(&q(1, 4))).map_err(e)?.is_none(), "H_a itself is not PSD")?;

    Ok(format!("positives pass on 100 instances each; Power(1/2) refuted on {half_fails}/100, jump controls refuted"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 appendix table", appendix_table, Duration::from_secs(1)),
        ("2 quartic identity", quartic_identity, Duration::from_secs(5)),
        ("3 adjugate structure", adjugate_structure, Duration::MAX),
        ("4 TN criterion equivalence", tn_equivalence, Duration::from_secs(30)),
        ("5 power-function criterion", power_criterion, Duration::MAX),
        ("6 critical value vs bisection", critical_value_bisection, Duration::from_secs(60)),
        ("7 hook Schur vs tableaux", hook_schur, Duration::MAX),
        ("8 Hadamard-power TN failure", delta_search, Duration::MAX),
        ("9 preserver suites", preserver_suites, Duration::from_secs(180)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match result {
            Ok(_) if took > budget => Err(format!("took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match verdict {
            Ok(detail) => println!("PASS  {name}  ({took:.2?})  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({took:.2?})  {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
